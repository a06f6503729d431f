"""Named mapping classes, group operations, and the relation suite.

A mapping class is carried as an outer automorphism of the surface group
together with its induced puncture permutation and orientation sign.  The
permutation and sign are not declared by the constructors: they are read
off the automorphism by matching the image of each puncture loop against
the peripheral classes, so a bad table cannot ship a plausible-looking
wrapper.  Equality of mapping classes is equality of outer automorphisms
with matching permutation and sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import _tables as tables
from .surface import CurveClass, SurfaceModel, build, canonicalize, curve, peripheral
from .words import (
    AutPair,
    Word,
    abelianized,
    apply_aut,
    compose,
    conjugacy_witness,
    cyclic_reduce,
    identity_aut,
    inner_witness,
    inverse,
    invert,
)

SIGMA_ONLY = "SigmaOnly"
DISK_ONLY = "DiskOnly"
GLOBAL = "Global"


@dataclass(frozen=True)
class MappingClass:
    model: SurfaceModel
    aut: AutPair
    perm: tuple[int, ...]
    sign: int
    provenance: str
    support: str


def _gamma_words(model: SurfaceModel) -> list[Word]:
    g, p = model.genus, model.punctures
    out: list[Word] = [(tables.g_letter(g, k),) for k in range(1, p)]
    out.append(tables.last_puncture_word(g, p))
    return out


def _oriented_canonical(w: Word) -> Word:
    core, _ = cyclic_reduce(w)
    return min(core[r:] + core[:r] for r in range(len(core))) if core else ()


def _peripheral_action(model: SurfaceModel, aut: AutPair) -> tuple[tuple[int, ...], int]:
    """Puncture permutation and sign read off the automorphism.

    Raises if some puncture loop maps outside the peripheral structure or
    the orientation sign is not uniform across punctures.
    """
    gammas = _gamma_words(model)
    lookup: dict[Word, tuple[int, int]] = {}
    for m, w in enumerate(gammas, start=1):
        lookup[_oriented_canonical(w)] = (m, 1)
        lookup[_oriented_canonical(invert(w))] = (m, -1)
    perm: list[int] = []
    signs: set[int] = set()
    for k, w in enumerate(gammas, start=1):
        key = _oriented_canonical(apply_aut(aut, w))
        if key not in lookup:
            raise ValueError(f"image of puncture loop {k} is not peripheral")
        m, s = lookup[key]
        perm.append(m)
        signs.add(s)
    if len(signs) != 1:
        raise ValueError("orientation sign is not uniform on the punctures")
    if sorted(perm) != list(range(1, model.punctures + 1)):
        raise ValueError("puncture loops do not map bijectively")
    return tuple(perm), signs.pop()


def _mk(model: SurfaceModel, aut: AutPair, provenance: str, support: str) -> MappingClass:
    perm, sign = _peripheral_action(model, aut)
    if support == SIGMA_ONLY:
        g = model.genus
        for k in range(1, model.punctures):
            x = tables.g_letter(g, k)
            if aut.fwd[x - 1] != (x,):
                raise ValueError(f"{provenance}: SigmaOnly class moves a puncture loop")
    if support == DISK_ONLY:
        for x in range(1, 2 * model.genus + 1):
            if aut.fwd[x - 1] != (x,):
                raise ValueError(f"{provenance}: DiskOnly class moves a handle generator")
    return MappingClass(model, aut, perm, sign, provenance, support)


# ---------------------------------------------------------------------------
# constructors


def identity_mc(model: SurfaceModel) -> MappingClass:
    return _mk(model, identity_aut(model.rank), "1", SIGMA_ONLY)


def twist(model: SurfaceModel, name: str) -> MappingClass:
    """Right-handed Dehn twist about a named catalog curve."""
    g, p = model.genus, model.punctures
    curve(model, name)  # reject unknown names with the surface's error
    if name == "b":
        aut = tables.tw_hole(g, p, 1) if g == 1 else tables.tw_hole(g, p, 2)
        return _mk(model, aut, "B", SIGMA_ONLY)
    if name == "delta":
        return _mk(model, tables.tw_separating(g, p), "DELTA", GLOBAL)
    kind, idx = name[:1], int(name[1:])
    if kind == "a":
        return _mk(model, tables.chain_twist(g, p, idx), f"A{idx}", SIGMA_ONLY)
    if kind == "n":
        return _mk(model, tables.tw_two_puncture(g, p, idx), f"N{idx}", DISK_ONLY)
    # rotating family: E_j is the E_0 twist transported j steps
    if idx == 0:
        return _mk(model, tables.tw_through(g, p, 1), "E0", SIGMA_ONLY)
    rot = tables.power_aut(tables.curve_rotation(g, p), idx)
    aut = compose(rot, compose(tables.tw_through(g, p, 1), inverse(rot)))
    return _mk(model, aut, f"E{idx}", GLOBAL)


def half_twist(model: SurfaceModel, j: int) -> MappingClass:
    """Half twist swapping adjacent punctures j, j+1."""
    if model.punctures < 2:
        raise ValueError("half twists need at least two punctures")
    aut = tables.half_twist(model.genus, model.punctures, j)
    return _mk(model, aut, f"H{j}{j + 1}", DISK_ONLY)


def half_twist_1p(model: SurfaceModel) -> MappingClass:
    """Half twist along the below-the-row arc joining punctures 1 and p."""
    if model.punctures < 2:
        raise ValueError("half twists need at least two punctures")
    aut = tables.swap_1p(model.genus, model.punctures)
    return _mk(model, aut, "H1p", DISK_ONLY)


def rho1(model: SurfaceModel) -> MappingClass:
    """First half-turn of the symmetric picture."""
    if model.punctures < 2:
        raise ValueError("the half-turn pair needs at least two punctures")
    aut = tables.front_involution(model.genus, model.punctures)
    return _mk(model, aut, "RHO1", GLOBAL)


def rho2(model: SurfaceModel) -> MappingClass:
    """Second half-turn, offset one step along the puncture row."""
    if model.punctures < 2:
        raise ValueError("the half-turn pair needs at least two punctures")
    aut = tables.back_involution(model.genus, model.punctures)
    return _mk(model, aut, "RHO2", GLOBAL)


def rotation_T(model: SurfaceModel) -> MappingClass:
    """The rotation class: the first half-turn after the second."""
    T = compose_mc(rho1(model), rho2(model))
    return MappingClass(T.model, T.aut, T.perm, T.sign, "T", GLOBAL)


def s_product(model: SurfaceModel) -> MappingClass:
    """Product of all chain twists; conjugation by it shifts the chain."""
    g = model.genus
    aut = tables.chain_product(g, model.punctures)
    name = "·".join(f"A{i}" for i in range(2 * g, 0, -1))
    return _mk(model, aut, name, SIGMA_ONLY)


def reflection_R(model: SurfaceModel) -> MappingClass:
    """The orientation-reversing reflection of the row picture."""
    if model.punctures < 2:
        raise ValueError("the reflection pairs with rho2; needs p >= 2")
    return _mk(model, tables.mirror(model.genus, model.punctures), "R", GLOBAL)


def t_prime(model: SurfaceModel) -> MappingClass:
    """The orientation-reversing rotation: reflection after rho2."""
    TP = compose_mc(reflection_R(model), rho2(model))
    return MappingClass(TP.model, TP.aut, TP.perm, TP.sign, "TP", GLOBAL)


# ---------------------------------------------------------------------------
# group operations


def compose_mc(F: MappingClass, G: MappingClass) -> MappingClass:
    """F after G (G is applied first)."""
    if F.model != G.model:
        raise ValueError("mapping classes live on different surfaces")
    perm = tuple(F.perm[G.perm[k] - 1] for k in range(len(G.perm)))
    support = F.support if F.support == G.support else GLOBAL
    return MappingClass(
        F.model,
        compose(F.aut, G.aut),
        perm,
        F.sign * G.sign,
        f"{F.provenance}·{G.provenance}",
        support,
    )


def inverse_mc(F: MappingClass) -> MappingClass:
    inv_perm = [0] * len(F.perm)
    for k, m in enumerate(F.perm, start=1):
        inv_perm[m - 1] = k
    return MappingClass(
        F.model,
        inverse(F.aut),
        tuple(inv_perm),
        F.sign,
        f"({F.provenance})^-1",
        F.support,
    )


def power_mc(F: MappingClass, k: int) -> MappingClass:
    if k < 0:
        return power_mc(inverse_mc(F), -k)
    out = identity_mc(F.model)
    for _ in range(k):
        out = compose_mc(out, F)
    return out


def act_on_curve(F: MappingClass, c: CurveClass) -> CurveClass:
    """Image class of a curve; well defined on conjugacy classes."""
    return canonicalize(apply_aut(F.aut, c.word))


def equal(F: MappingClass, G: MappingClass) -> bool:
    """Outer equality with matching puncture action and sign.

    Cheap filters (sign, permutation, homology) run before the conjugacy
    search for an inner witness.
    """
    if F.model != G.model:
        raise ValueError("mapping classes live on different surfaces")
    if F.sign != G.sign or F.perm != G.perm:
        return False
    d = compose(F.aut, inverse(G.aut))
    n = F.model.rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    if abelianized(d) != ident:
        return False
    return inner_witness(d) is not None


# ---------------------------------------------------------------------------
# the relation suite


@dataclass(frozen=True)
class ValidationItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    genus: int
    punctures: int
    items: tuple[ValidationItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def as_dict(self) -> dict:
        return {
            "surface": {"g": self.genus, "p": self.punctures},
            "ok": self.ok,
            "items": [
                {"name": i.name, "passed": i.passed, "detail": i.detail}
                for i in self.items
            ],
        }


def _commutes(F: MappingClass, G: MappingClass) -> bool:
    return equal(compose_mc(F, G), compose_mc(G, F))


def validate(model: SurfaceModel) -> ValidationReport:
    """Run the full relation suite; failures are data, not exceptions."""
    g, p = model.genus, model.punctures
    items: list[ValidationItem] = []

    def check(name: str, fn: Callable[[], bool], detail_on_fail: str = "") -> None:
        try:
            ok = fn()
            detail = "" if ok else detail_on_fail
        except Exception as exc:  # failures are data
            ok, detail = False, f"{detail_on_fail} raised {exc!r}"
        items.append(ValidationItem(name, ok, detail))

    A = {i: twist(model, f"a{i}") for i in range(1, 2 * g + 1)}
    B = twist(model, "b")
    D = twist(model, "delta")
    H = {j: half_twist(model, j) for j in range(1, p)} if p >= 2 else {}
    ident = identity_mc(model)

    if p >= 2:
        r1, r2, R = rho1(model), rho2(model), reflection_R(model)
        T = rotation_T(model)
        for nm, F, want_sign in (("rho1", r1, 1), ("rho2", r2, 1), ("R", R, -1)):
            check(f"involution {nm}^2 = 1",
                  lambda F=F: equal(compose_mc(F, F), ident),
                  f"{nm}^2 is not the identity class")
            check(f"sign({nm}) = {want_sign:+d}",
                  lambda F=F, want=want_sign: F.sign == want,
                  f"sign({nm}) = {F.sign:+d}")

    for i in A:
        for j in A:
            if j - i >= 2:
                check(f"commute A{i}, A{j}", lambda i=i, j=j: _commutes(A[i], A[j]),
                      f"A{i} and A{j} fail to commute")
    E0 = twist(model, "e0")
    for i in A:
        if abs(i - 2) >= 2:
            check(f"commute A{i}, E0", lambda i=i: _commutes(A[i], E0),
                  f"A{i} and E0 fail to commute")
    if p >= 3:
        sig = [A[i] for i in A] + [B, E0, s_product(model)]
        for F in sig:
            check(f"commute H12, {F.provenance}", lambda F=F: _commutes(H[1], F),
                  f"H12 and {F.provenance} fail to commute")
    # delta bounds the handle/disk decomposition: every one-sided class commutes
    one_sided = [A[i] for i in A] + [B, E0, s_product(model)] + [H[j] for j in H]
    one_sided += [twist(model, f"n{j}") for j in range(1, p)]
    for F in one_sided:
        check(f"commute DELTA, {F.provenance}", lambda F=F: _commutes(D, F),
              f"DELTA and {F.provenance} fail to commute")

    for i in range(1, 2 * g):
        check(f"braid A{i}, A{i + 1}",
              lambda i=i: equal(compose_mc(A[i], compose_mc(A[i + 1], A[i])),
                                compose_mc(A[i + 1], compose_mc(A[i], A[i + 1]))),
              f"braid fails for A{i}, A{i + 1}")
    if g >= 2:
        check("braid B, A4",
              lambda: equal(compose_mc(B, compose_mc(A[4], B)),
                            compose_mc(A[4], compose_mc(B, A[4]))),
              "braid fails for B, A4")

    for j in H:
        check(f"H{j}{j + 1}^2 = twist(n{j})",
              lambda j=j: equal(compose_mc(H[j], H[j]), twist(model, f"n{j}")),
              f"square of H{j}{j + 1} is not the n{j} twist")

    S = s_product(model)
    for i in range(1, 2 * g):
        check(f"S A{i} S^-1 = A{i + 1}",
              lambda i=i: equal(compose_mc(S, compose_mc(A[i], inverse_mc(S))), A[i + 1]),
              f"conjugation by S does not carry A{i} to A{i + 1}")

    if p >= 2:
        T = rotation_T(model)
        check("perm(T) is the long cycle",
              lambda: T.perm == tuple(list(range(2, p + 1)) + [1]),
              f"perm(T) = {T.perm}")
        Ej = {j: twist(model, f"e{j}") for j in range(p)}
        for j in range(p):
            check(f"T E{j} T^-1 = E{(j + 1) % p}",
                  lambda j=j: equal(
                      compose_mc(T, compose_mc(Ej[j], inverse_mc(T))),
                      Ej[(j + 1) % p]),
                  f"conjugation by T does not carry E{j} forward")
        ej = {j: curve(model, f"e{j}") for j in range(p)}
        for j in range(p):
            check(f"T carries e{j} to e{(j + 1) % p}",
                  lambda j=j: act_on_curve(T, ej[j]) == ej[(j + 1) % p],
                  f"act_on_curve(T, e{j}) is not e{(j + 1) % p}")

    def peripheral_ok(F: MappingClass) -> bool:
        return _peripheral_action(model, F.aut) == (F.perm, F.sign)

    all_named = list(vocabulary(model).values())
    for F in all_named:
        check(f"peripheral structure of {F.provenance}",
              lambda F=F: peripheral_ok(F),
              f"stored puncture action of {F.provenance} disagrees with its table")

    disk = [H[j] for j in H]
    sigma = [A[i] for i in A] + [B, E0]
    for Fd in disk:
        for Fs in sigma:
            check(f"disjoint supports {Fd.provenance}, {Fs.provenance}",
                  lambda Fd=Fd, Fs=Fs: _commutes(Fd, Fs),
                  f"{Fd.provenance} and {Fs.provenance} fail to commute")

    return ValidationReport(g, p, tuple(items))


def vocabulary(model: SurfaceModel) -> dict[str, MappingClass]:
    """The named generator set exposed to the word grammar and searches."""
    g, p = model.genus, model.punctures
    out: dict[str, MappingClass] = {}
    for i in range(1, 2 * g + 1):
        out[f"A{i}"] = twist(model, f"a{i}")
    out["B"] = twist(model, "b")
    out["DELTA"] = twist(model, "delta")
    for j in range(p):
        out[f"E{j}"] = twist(model, f"e{j}")
    for j in range(1, p):
        out[f"H{j}{j + 1}"] = half_twist(model, j)
        out[f"N{j}"] = twist(model, f"n{j}")
    if p >= 2:
        out["H1p"] = half_twist_1p(model)
        out["RHO1"] = rho1(model)
        out["RHO2"] = rho2(model)
        out["T"] = rotation_T(model)
        out["R"] = reflection_R(model)
        out["TP"] = t_prime(model)
    out["S"] = s_product(model)
    return out
