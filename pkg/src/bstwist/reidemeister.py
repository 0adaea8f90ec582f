"""Twisted-conjugacy counting and machine-checkable infinitude certificates.

Two elements are twisted-equivalent for a pair (phi, psi) when
alpha' = psi(gamma) alpha phi(gamma)^-1 for some gamma; psi = id gives the
single-endomorphism case.  Infinitude is only ever claimed through a
certificate: a homomorphism lam fixed by the endomorphism(s) together with
a witness family on which lam is injective.  Ball enumeration provides
independent evidence (stable in-box class counts) but never asserts
finiteness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import AbelianMap, fixed_functional, twisted_class_count
from .errors import BoxTooSmall, GroupMismatch, UnsupportedGroup, WrongFamily
from .homs import (
    EndoSpec, endo_apply, endo_validate, identity_endo, kappa, kappa_scale,
    kernel_generator,
)
from .models import (
    AFFINE, KLEIN, PERMUTED, AffineElement, FreeWord, KleinElement,
    PermutedProduct, PowRational, model_embed, model_family,
)
from .words import A, B, GroupSpec, Word, exp_sum, format_word, parse_word, power, word

INV_A_SUM = "a-exponent-sum"
INV_B_SUM = "b-exponent-sum"
INV_KAPPA = "kappa"

# ---------------------------------------------------------------------------
# Outcomes and certificates


@dataclass(frozen=True)
class Certificate:
    """Evidence that infinitely many twisted classes exist.

    `invariant` names the homomorphism lam, `scale_checks` records the
    verified identities lam(phi(gen)) = lam(gen) (and the psi copies for
    coincidence), and the witness family w * step^j takes pairwise
    distinct lam-values, so its members lie in pairwise distinct classes.
    """

    invariant: str
    target: str
    scale_checks: dict
    witness_base: str
    witness_step: str
    first_witnesses: tuple[str, ...]
    values: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "invariant": self.invariant,
            "target": self.target,
            "scale_checks": self.scale_checks,
            "witness_base": self.witness_base,
            "witness_step": self.witness_step,
            "first_witnesses": list(self.first_witnesses),
            "values": list(self.values),
        }


@dataclass(frozen=True)
class ReidemeisterOutcome:
    kind: str  # "finite" | "infinite" | "unknown"
    count: int | None = None
    certificate: Certificate | None = None
    attempts: tuple[str, ...] = ()

    @classmethod
    def finite(cls, count: int) -> "ReidemeisterOutcome":
        return cls("finite", count=count)

    @classmethod
    def infinite(cls, certificate: Certificate) -> "ReidemeisterOutcome":
        return cls("infinite", certificate=certificate)

    @classmethod
    def unknown(cls, attempts) -> "ReidemeisterOutcome":
        return cls("unknown", attempts=tuple(attempts))

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "finite":
            out["count"] = self.count
        elif self.kind == "infinite":
            out["certificate"] = self.certificate.as_dict()
        else:
            out["attempts"] = list(self.attempts)
        return out


# ---------------------------------------------------------------------------
# Abelian twisted classes


def reidemeister_abelian(f: AbelianMap, g: AbelianMap) -> ReidemeisterOutcome:
    """Classes of alpha ~ alpha + (g - f)(tau) on a f.g. abelian group."""
    count = twisted_class_count(f, g)
    if count is not None:
        return ReidemeisterOutcome.finite(count)
    functional = fixed_functional(f, g)
    if functional is None:  # pragma: no cover - infinite count always has one
        return ReidemeisterOutcome.unknown(["no fixed functional found"])
    step_index = max(range(len(functional)), key=lambda i: abs(functional[i]))
    unit = functional[step_index]
    witnesses = tuple(f"{j}*e{step_index + 1}" for j in range(10))
    cert = Certificate(
        invariant="linear-functional",
        target=f"Z via u = {list(functional)} on {f.group.describe()}",
        scale_checks={"u*(g-f)": "0"},
        witness_base="0",
        witness_step=f"e{step_index + 1}",
        first_witnesses=witnesses,
        values=tuple(str(j * unit) for j in range(10)),
    )
    return ReidemeisterOutcome.infinite(cert)


# ---------------------------------------------------------------------------
# Certificate catalog for B(m,n) endomorphisms

NUM_WITNESSES = 10


def _word_powers(step: Word, count: int = NUM_WITNESSES) -> list[Word]:
    return [power(step, j) for j in range(count)]


def _a_sum_certificate(specs: list[EndoSpec]) -> Certificate:
    checks = {}
    for tag, spec in zip(("phi", "psi"), specs):
        checks[f"|{tag}(a)|_a"] = exp_sum(spec.image_a, A)
        checks[f"|{tag}(b)|_a"] = exp_sum(spec.image_b, A)
    witnesses = _word_powers(word([(A, 1)]))
    return Certificate(
        invariant=INV_A_SUM,
        target="Z, the a-exponent quotient",
        scale_checks=checks,
        witness_base="1",
        witness_step="a",
        first_witnesses=tuple(format_word(w) for w in witnesses),
        values=tuple(str(exp_sum(w, A)) for w in witnesses),
    )


def _b_sum_certificate(specs: list[EndoSpec]) -> Certificate:
    checks = {}
    for tag, spec in zip(("phi", "psi"), specs):
        checks[f"|{tag}(a)|_b"] = exp_sum(spec.image_a, B)
        checks[f"|{tag}(b)|_b"] = exp_sum(spec.image_b, B)
    witnesses = _word_powers(word([(B, 1)]))
    return Certificate(
        invariant=INV_B_SUM,
        target="Z, the b-exponent quotient (m = n)",
        scale_checks=checks,
        witness_base="1",
        witness_step="b",
        first_witnesses=tuple(format_word(w) for w in witnesses),
        values=tuple(str(exp_sum(w, B)) for w in witnesses),
    )


def _kappa_certificate(specs: list[EndoSpec], window: int) -> Certificate:
    group = specs[0].group
    checks = {"window": window}
    for tag, spec in zip(("phi", "psi"), specs):
        checks[f"kappa scale of {tag}"] = str(kappa_scale(spec, window))
        checks[f"k of {tag}"] = exp_sum(spec.image_a, A)
    witnesses = _word_powers(word([(B, 1)]))
    return Certificate(
        invariant=INV_KAPPA,
        target=f"Q via kappa(g_i) = ({group.n}/{group.m})^i on K",
        scale_checks=checks,
        witness_base="1",
        witness_step="b",
        first_witnesses=tuple(format_word(w) for w in witnesses),
        values=tuple(str(kappa(w, group)) for w in witnesses),
    )


def certify_infinite(spec: EndoSpec, window: int = 8) -> ReidemeisterOutcome:
    """Try the invariant catalog in order; Infinite on first success.

    Catalog: |.|_a when k = 1; |.|_b when m = n and phi fixes it; kappa on
    the kernel when k != 1 and the kappa scale is 1 (k != 1 forces twisting
    elements into K, where kappa is genuinely invariant).  Never returns
    Finite.
    """
    group = spec.group
    if (group.m, group.n) == (1, 1):
        raise UnsupportedGroup(
            "B(1,1) = Z + Z admits automorphisms with finite Reidemeister "
            "number; refusing rather than misleading")
    data = endo_validate(spec)
    attempts = []

    if data.k == 1 and data.kernel_preserved:
        return ReidemeisterOutcome.infinite(_a_sum_certificate([spec]))
    attempts.append(
        f"{INV_A_SUM}: needs k = 1 and |phi(b)|_a = 0, got k = {data.k}, "
        f"|phi(b)|_a = {exp_sum(spec.image_b, A)}")

    if group.m == group.n:
        b_of_b = exp_sum(spec.image_b, B)
        b_of_a = exp_sum(spec.image_a, B)
        if b_of_b == 1 and b_of_a == 0:
            return ReidemeisterOutcome.infinite(_b_sum_certificate([spec]))
        attempts.append(
            f"{INV_B_SUM}: needs |phi(b)|_b = 1 and |phi(a)|_b = 0, got "
            f"{b_of_b} and {b_of_a}")
    else:
        attempts.append(f"{INV_B_SUM}: only applies when m = n")

    if data.kernel_preserved and data.k != 1:
        scale = kappa_scale(spec, window)
        if scale == 1:
            return ReidemeisterOutcome.infinite(_kappa_certificate([spec], window))
        attempts.append(f"{INV_KAPPA}: needs scale d = 1, got d = {scale} "
                        f"(window {window})")
    else:
        attempts.append(f"{INV_KAPPA}: needs kernel preserved and k != 1")

    return ReidemeisterOutcome.unknown(attempts)


def coincidence_certify(phi: EndoSpec, psi: EndoSpec, window: int = 8) -> ReidemeisterOutcome:
    """Certificate search for the pair relation alpha ~ psi(g) alpha phi(g)^-1."""
    if phi.group != psi.group:
        raise GroupMismatch(f"{phi.group} vs {psi.group}")
    group = phi.group
    if (group.m, group.n) == (1, 1):
        raise UnsupportedGroup("B(1,1) refused; see certify_infinite")
    data_phi = endo_validate(phi)
    data_psi = endo_validate(psi)
    attempts = []

    if (data_phi.k == 1 and data_psi.k == 1
            and data_phi.kernel_preserved and data_psi.kernel_preserved):
        return ReidemeisterOutcome.infinite(_a_sum_certificate([phi, psi]))
    attempts.append(
        f"{INV_A_SUM}: needs k = 1 for both, got {data_phi.k} and {data_psi.k}")

    if group.m == group.n:
        if all(exp_sum(s.image_b, B) == 1 and exp_sum(s.image_a, B) == 0
               for s in (phi, psi)):
            return ReidemeisterOutcome.infinite(_b_sum_certificate([phi, psi]))
        attempts.append(f"{INV_B_SUM}: both maps must fix the b-quotient")
    else:
        attempts.append(f"{INV_B_SUM}: only applies when m = n")

    # kappa is invariant under twisting by gamma in K only; differing k's
    # force every in-kernel twist to come from gamma in K.
    if (data_phi.kernel_preserved and data_psi.kernel_preserved
            and data_phi.k != data_psi.k):
        if kappa_scale(phi, window) == 1 and kappa_scale(psi, window) == 1:
            return ReidemeisterOutcome.infinite(_kappa_certificate([phi, psi], window))
        attempts.append(f"{INV_KAPPA}: needs scale d = 1 for both")
    else:
        attempts.append(
            f"{INV_KAPPA}: needs kernels preserved and distinct k's to pin "
            f"twisting into K")

    return ReidemeisterOutcome.unknown(attempts)


def check_certificate(cert: Certificate, phi: EndoSpec,
                      psi: EndoSpec | None = None, window: int = 8) -> bool:
    """Independent soundness check of an emitted certificate.

    Recomputes the scale identities from the specs and the lam-values of
    the listed witnesses; True iff lam is fixed and the values are pairwise
    distinct.
    """
    group = phi.group
    specs = [phi] + ([psi] if psi is not None else [])
    witnesses = [parse_word(text, group) for text in cert.first_witnesses]

    if cert.invariant == INV_A_SUM:
        for spec in specs:
            if exp_sum(spec.image_a, A) != 1 or exp_sum(spec.image_b, A) != 0:
                return False
        values = [exp_sum(w, A) for w in witnesses]
    elif cert.invariant == INV_B_SUM:
        if group.m != group.n:
            return False
        for spec in specs:
            if exp_sum(spec.image_b, B) != 1 or exp_sum(spec.image_a, B) != 0:
                return False
        values = [exp_sum(w, B) for w in witnesses]
    elif cert.invariant == INV_KAPPA:
        for spec in specs:
            if kappa_scale(spec, window) != 1:
                return False
        # twisting must be pinned inside K
        ks = [exp_sum(spec.image_a, A) for spec in specs]
        if len(ks) == 1:
            if ks[0] == 1:
                return False
        elif ks[0] == ks[1]:
            return False
        values = [kappa(w, group) for w in witnesses]
    else:
        return False

    if [str(v) for v in values] != list(cert.values):
        return False
    return len(set(values)) == len(values)


# ---------------------------------------------------------------------------
# Power constraint arithmetic


def power_constraint(m: int, n: int, k_range: tuple[int, int]) -> set[int]:
    """{k in [lo, hi] : n^(k-1) = m^(k-1)} with exact arithmetic."""
    if m == 0 or n == 0:
        raise ValueError("power_constraint requires mn != 0")
    lo, hi = k_range
    solutions = set()
    for k in range(lo, hi + 1):
        e = k - 1
        if Fraction(n) ** e == Fraction(m) ** e:
            solutions.add(k)
    return solutions


# ---------------------------------------------------------------------------
# Ball enumeration of twisted classes on the modeled families


@dataclass(frozen=True)
class BallReport:
    family: str
    bounds: dict
    total_elements: int
    merges_applied: int
    stable_classes: int
    tentative_classes: int
    stabilized: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "bounds": self.bounds,
            "total_elements": self.total_elements,
            "merges_applied": self.merges_applied,
            "stable_classes": self.stable_classes,
            "tentative_classes": self.tentative_classes,
            "stabilized": self.stabilized,
        }


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.merges = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry
            self.merges += 1


def _klein_box(bounds):
    u_max, v_max = bounds["u"], bounds["v"]
    return [KleinElement(u, v)
            for u in range(-u_max, u_max + 1)
            for v in range(-v_max, v_max + 1)]


def _affine_box(bounds, n):
    k_max, t_max = bounds["k"], bounds["t"]
    denom_exp = bounds.get("e", min(k_max, 4))
    base = abs(n)
    elements = {}
    for p in range(-t_max, t_max + 1):
        t = PowRational.make(p, denom_exp, base)
        for k in range(-k_max, k_max + 1):
            elements[(p, k)] = AffineElement(t, k, n)
    return elements, denom_exp


def _affine_key(e: AffineElement, denom_exp: int):
    if e.t.exp > denom_exp:
        return None  # finer denominator than the lattice carries
    return (e.t.num * e.t.base ** (denom_exp - e.t.exp), e.k)


def _free_words(m: int, max_len: int):
    words = [FreeWord()]
    frontier = [FreeWord()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for idx in range(1, m + 1):
                for exp in (1, -1):
                    candidate = w * FreeWord.generator(idx, exp)
                    if candidate.length() == w.length() + 1:
                        nxt.append(candidate)
        frontier = nxt
        words.extend(frontier)
    return list(dict.fromkeys(words))


def _permuted_box(bounds, m: int):
    l_max, k_max = bounds["l"], bounds["k"]
    return [PermutedProduct(w, k, m)
            for w in _free_words(m, l_max)
            for k in range(-k_max, k_max + 1)]


def _enumerate_once(group: GroupSpec, phi: EndoSpec, psi: EndoSpec,
                    bounds: dict, inner_margin: int):
    family = model_family(group)
    gens = [word([(A, 1)]), word([(A, -1)]), word([(B, 1)]), word([(B, -1)])]
    psi_images = [model_embed(endo_apply(psi, g), group) for g in gens]
    phi_inv_images = [model_embed(endo_apply(phi, g), group).inverse() for g in gens]

    if family == KLEIN:
        box = _klein_box(bounds)
        membership = {(e.u, e.v): e for e in box}
        key = lambda e: (e.u, e.v)
    elif family == AFFINE:
        from .models import _affine_n
        n = _affine_n(group)
        membership, denom_exp = _affine_box(bounds, n)
        box = list(membership.values())
        key = lambda e: _affine_key(e, denom_exp)
    elif family == PERMUTED:
        box = _permuted_box(bounds, abs(group.m))
        membership = {(e.w.syllables, e.k): e for e in box}
        key = lambda e: (e.w.syllables, e.k)
    else:  # pragma: no cover
        raise WrongFamily(str(group))

    keys = list(membership.keys())
    uf = _UnionFind(keys)
    twists = {}  # key -> list of in-box twisted neighbors
    for k0, element in membership.items():
        neighbors = []
        for pg, fg in zip(psi_images, phi_inv_images):
            image = (pg * element) * fg
            k1 = key(image)
            if k1 is not None and k1 in membership:
                neighbors.append(k1)
                uf.union(k0, k1)
            else:
                neighbors.append(None)
        twists[k0] = neighbors

    # inner region: elements whose twists stay inside, iterated margin times
    inner = set(keys)
    for _ in range(inner_margin):
        inner = {k for k in inner
                 if all(t is not None and t in inner for t in twists[k])}

    roots_all = {uf.find(k) for k in keys}
    roots_inner = {uf.find(k) for k in inner}
    return uf, roots_all, roots_inner, len(keys), membership, key


def enumerate_classes_ball(group: GroupSpec, phi: EndoSpec,
                           psi: EndoSpec | None = None,
                           bounds: dict | None = None,
                           inner_margin: int = 2) -> BallReport:
    """Union-find over a model box under single-generator twists.

    A class is stable when it meets the inner region (the box eroded
    `inner_margin` twist steps).  Stable counts are upper-bound evidence
    only; the stabilization flag compares the count against the doubled
    box.  Raises BoxTooSmall when nothing is stable.
    """
    family = model_family(group)
    if psi is None:
        psi = identity_endo(group)
    endo_validate(phi)
    endo_validate(psi)
    if bounds is None:
        bounds = {KLEIN: {"u": 64, "v": 8},
                  AFFINE: {"k": 10, "t": 200, "e": 4},
                  PERMUTED: {"l": 4, "k": 6}}[family]

    uf, roots_all, roots_inner, total, _, _ = _enumerate_once(
        group, phi, psi, bounds, inner_margin)
    if not roots_inner:
        raise BoxTooSmall(f"no stable class in box {bounds}")
    doubled = {k: 2 * v for k, v in bounds.items()}
    _, _, roots_inner_2, _, _, _ = _enumerate_once(
        group, phi, psi, doubled, inner_margin)
    return BallReport(
        family=family,
        bounds=dict(bounds),
        total_elements=total,
        merges_applied=uf.merges,
        stable_classes=len(roots_inner),
        tentative_classes=len(roots_all),
        stabilized=len(roots_inner) == len(roots_inner_2),
    )


def witnesses_stay_separated(cert: Certificate, phi: EndoSpec,
                             psi: EndoSpec | None = None,
                             bounds: dict | None = None) -> bool:
    """Enumerator cross-check: listed witnesses never merge in the box.

    Vacuously true for groups outside the modeled families, where no
    enumeration substrate exists.
    """
    group = phi.group
    try:
        model_family(group)
    except WrongFamily:
        return True
    if psi is None:
        psi = identity_endo(group)
    if bounds is None:
        family = model_family(group)
        bounds = {KLEIN: {"u": 48, "v": 10},
                  AFFINE: {"k": 12, "t": 200, "e": 4},
                  PERMUTED: {"l": 3, "k": 12}}[family]
    uf, _, _, _, membership, key = _enumerate_once(group, phi, psi, bounds, 0)
    roots = []
    for text in cert.first_witnesses:
        element = model_embed(parse_word(text, group), group)
        k = key(element)
        if k is None or k not in membership:
            continue  # witness outside the box: no merge evidence either way
        roots.append(uf.find(k))
    return len(roots) == len(set(roots))
