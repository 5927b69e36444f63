"""Induced representations Ind_H^G rho over a fixed orbit, and their cuspidality.

Every character value of rho (optionally twisted by chi o det) is handled as a
short list of roots of unity ``sum_t coef_t * zeta_M^expo_t``; Mackey sums are
exponent histograms per double coset, normalised once.  Representations are
never materialised.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from cusplab.characters.extensions import ExtensionFamily, PsiBeta, extend_linear, transversal
from cusplab.characters.gl2 import GL2Table, gl2_character_table
from cusplab.characters.multiplicity import trivial_multiplicity
from cusplab.matgroup import (
    BlockUnipotent,
    CapExceeded,
    DoubleCosetDecomp,
    FullGroup,
    GroupContext,
    GroupDescriptor,
    InfinitesimalRadical,
    StabilizerPreimage,
    conj_intersections,
    double_cosets,
    members,
)
from cusplab.orbits import (
    OrbitClass,
    char_poly_batch,
    classify,
    companion,
    orbit_reps_quadratic,
    quartic_orbit_reps,
)
from cusplab.ring_core.cyclotomic import Cyclotomic, normal_forms
from cusplab.ring_core.fields import FiniteField
from cusplab.ring_core.local_ring import (
    AdditiveCharacter,
    LocalRing,
    embed_fq2,
    quadratic_extension,
    unembed_fq2,
)
from cusplab.ring_core.linalg import encode

# elements scanned by one Mackey sum before refusing (conjugations of U-members)
MACKEY_CAP = 40_000_000
# elements of all H cap xUx^-1 kept in memory at once (16 int64 entries each)
MACKEY_ELEMENTS = 8_000_000


class IntegralityError(ArithmeticError):
    """A multiplicity that should be a non-negative integer is not."""

    def __init__(self, value: Fraction | Cyclotomic, where: str):
        super().__init__(f"{where}: non-integral multiplicity {value}")
        self.value = value


# -- rho specifications -------------------------------------------------------

@dataclass(frozen=True)
class Linear:
    """rho = the index-th member of the extension family."""

    index: int

    def label(self) -> str:
        return f"ext[{self.index}]"


@dataclass(frozen=True)
class ThetaTwist:
    """rho = theta (pulled back from H/K_1 = GL_2(F_{q^2})) times psi-tilde."""

    theta: int
    psi_tilde: int = 0

    def label(self) -> str:
        return f"theta[{self.theta}]*ext[{self.psi_tilde}]"


@dataclass
class ElementData:
    """What any rho needs to know about a batch of elements of H."""

    section: np.ndarray  # transversal index of the residue
    kexp: np.ndarray  # psi_beta(k) exponent for h = s(c) k
    det_log: np.ndarray  # discrete log of det(h) in o_2^x
    theta_class: np.ndarray | None = None


@dataclass
class MackeyData:
    decomposition: DoubleCosetDecomp
    sizes: np.ndarray  # |H cap x U x^-1| per double coset
    segment: np.ndarray  # double-coset index of each stored element
    data: ElementData


class OrbitFamily:
    """Everything attached to one orbit representative beta.

    With ``theta_field`` (the F_{q^2} whose elements are embedded blockwise),
    H/K_1 is identified with GL_2(F_{q^2}) and the representations are
    theta (x) psi-tilde; otherwise they are the linear extensions of psi_beta.
    """

    def __init__(self, ctx: GroupContext, beta, psi: AdditiveCharacter | None = None,
                 theta_field: FiniteField | None = None, name: str = "", cache=None):
        self.ctx = ctx
        self.beta = np.asarray(beta, dtype=np.int64) % ctx.p
        self.name = name or f"beta{int(encode(self.beta, ctx.p))}"
        self.psi = psi or AdditiveCharacter(ctx.ring)
        self.cache = cache
        self.orbit: OrbitClass = classify(self.beta, ctx.p)
        self.H = StabilizerPreimage(ctx, self.beta)
        self.base = PsiBeta(ctx, self.beta, self.psi)
        self.extensions: ExtensionFamily = extend_linear(self.base, self.H)
        self.theta_field = theta_field
        self.table: GL2Table | None = None
        if theta_field is not None:
            self.table = gl2_character_table(theta_field)
            self._check_theta_identification()
        self._mackey: dict[str, MackeyData] = {}

    def _check_theta_identification(self) -> None:
        cent = self.H.centralizer
        blocks = self._theta_image(cent)
        back = np.block([[embed_fq2(self.theta_field, int(x)) for x in row] for row in blocks[0]])
        if self.ctx.n != 4 or len(cent) != self.table.order or not np.array_equal(back, cent[0] % self.ctx.p):
            raise ValueError("centralizer is not GL_2(F_{q^2}) in the expected block form")

    def _theta_image(self, Xbar) -> np.ndarray:
        Xbar = np.asarray(Xbar) % self.ctx.p
        out = np.empty(Xbar.shape[:-2] + (2, 2), dtype=np.int64)
        for i in range(2):
            for j in range(2):
                out[..., i, j] = unembed_fq2(self.theta_field, Xbar[..., 2 * i:2 * i + 2, 2 * j:2 * j + 2])
        return out

    @property
    def index(self) -> int:
        """[G : H] = size of the residue orbit."""
        return self.orbit.orbit_size

    @property
    def twist_order(self) -> int:
        return len(self.ctx.ring.units)

    def representations(self, psi_tilde: int = 0) -> list[RepDescriptor]:
        if self.table is not None:
            if not self.extensions.exists:
                raise AssertionError(f"{self.name}: no linear extension of psi_beta exists")
            return [RepDescriptor(self, ThetaTwist(t, psi_tilde)) for t in range(len(self.table.characters))]
        return [RepDescriptor(self, Linear(i)) for i in range(len(self.extensions))]

    # -- element data ---------------------------------------------------
    def element_data(self, X) -> ElementData:
        X = np.asarray(X, dtype=np.int64)
        ring = self.ctx.ring
        idx, k = transversal(self.H).decompose(X)
        det_log = ring.unit_log[ring.det(X)]
        theta = None
        if self.table is not None:
            theta = self.table.class_indices(self._theta_image(self.ctx.reduce(X)))
        return ElementData(idx, self.base.exponents(k), det_log, theta)

    def rho_terms(self, spec, twist: int, data: ElementData) -> tuple[np.ndarray, np.ndarray, int]:
        """(coef, expo, M) with chi_rho(h) = sum_t coef[:, t] zeta_M^expo[:, t]."""
        ext = self.extensions[spec.index if isinstance(spec, Linear) else spec.psi_tilde]
        u = self.twist_order
        M = lcm(ext.modulus, u, self.table.m if self.table is not None else 1)
        e = ext.section[data.section] + data.kexp * (ext.modulus // self.base.order)
        e = (e % ext.modulus) * (M // ext.modulus)
        e = e + (twist % u) * data.det_log * (M // u)
        if isinstance(spec, Linear):
            return np.ones((len(e), 1), dtype=np.int64), (e % M)[:, None], M
        row = spec.theta
        coef = self.table.coef[row, data.theta_class]
        expo = self.table.expo[row, data.theta_class] * (M // self.table.m) + e[:, None]
        return coef, expo % M, M

    def rho_dimension(self, spec) -> int:
        if isinstance(spec, Linear):
            return 1
        return self.table.characters[spec.theta].dimension

    # -- Mackey data -------------------------------------------------------
    def mackey_data(self, U: GroupDescriptor) -> MackeyData:
        hit = self._mackey.get(U.tag)
        if hit is not None:
            return hit
        dc = double_cosets(self.H, U, cache=self.cache)
        if len(dc) * U.order() > MACKEY_CAP:
            raise CapExceeded(f"{self.name} vs {U.tag}: {len(dc)} cosets x |U| = {U.order()}")
        parts = conj_intersections(self.H, dc.reps, U)
        sizes = np.array([len(S) for S in parts], dtype=np.int64)
        if sizes.sum() > MACKEY_ELEMENTS:
            raise CapExceeded(f"{self.name} vs {U.tag}: {int(sizes.sum())} intersection elements")
        segment = np.repeat(np.arange(len(parts)), sizes)
        data = self.element_data(np.concatenate(parts))
        out = MackeyData(dc, sizes, segment, data)
        self._mackey[U.tag] = out
        return out


@dataclass(frozen=True, eq=False)
class RepDescriptor:
    family: OrbitFamily
    rho_spec: Linear | ThetaTwist
    twist: int = 0  # index into unit_characters; 0 is the trivial character

    @property
    def ctx(self) -> GroupContext:
        return self.family.ctx

    @property
    def orbit(self) -> OrbitClass:
        return self.family.orbit

    @property
    def H(self) -> StabilizerPreimage:
        return self.family.H

    @property
    def rho_dimension(self) -> int:
        return self.family.rho_dimension(self.rho_spec)

    @property
    def dimension(self) -> int:
        return self.family.index * self.rho_dimension

    def twisted(self, j: int) -> RepDescriptor:
        return RepDescriptor(self.family, self.rho_spec, (self.twist + j) % self.family.twist_order)

    def label(self) -> str:
        tw = f"*chi[{self.twist}]" if self.twist else ""
        return f"{self.family.name}:{self.rho_spec.label()}{tw}"

    def character_sum(self, X) -> Cyclotomic:
        coef, expo, M = self.family.rho_terms(self.rho_spec, self.twist, self.family.element_data(X))
        counts = np.zeros(M, dtype=np.int64)
        np.add.at(counts, expo.ravel(), coef.ravel())
        return Cyclotomic.from_counts(M, counts)

    def __repr__(self):
        return f"RepDescriptor({self.label()}, dim={self.dimension})"


# -- values and multiplicities ------------------------------------------------

def rho_value(rep: RepDescriptor, h) -> Cyclotomic:
    h = np.asarray(h, dtype=np.int64)
    if not bool(rep.H.contains(h)):
        raise ValueError("element outside the inducing subgroup")
    return rep.character_sum(h[None])


def _segment_sums(segment: np.ndarray, sizes: np.ndarray, coef, expo, M) -> Fraction | Cyclotomic:
    """sum_x (1/|S_x|) sum_{s in S_x} chi(s); returns a Fraction when rational."""
    counts = np.zeros((len(sizes), M), dtype=np.int64)
    seg = np.broadcast_to(segment[:, None], expo.shape)
    np.add.at(counts, (seg.ravel(), expo.ravel()), coef.ravel())
    nf = normal_forms(counts, M)
    total = [Fraction(0)] * nf.shape[1]
    for s in np.unique(sizes):
        block = nf[sizes == s].sum(axis=0)
        for i, v in enumerate(block.tolist()):
            if v:
                total[i] += Fraction(v, int(s))
    if any(total[1:]):
        return Cyclotomic(M, total)
    return total[0]


def mackey_multiplicity(rep: RepDescriptor, U: GroupDescriptor) -> Fraction:
    """<Ind_H^G rho, Ind_U^G 1> = sum over H\\G/U of <rho|_{H cap xUx^-1}, 1>."""
    md = rep.family.mackey_data(U)
    coef, expo, M = rep.family.rho_terms(rep.rho_spec, rep.twist, md.data)
    value = _segment_sums(md.segment, md.sizes, coef, expo, M)
    if not isinstance(value, Fraction) or value.denominator != 1 or value < 0:
        raise IntegralityError(value, f"{rep.label()} vs {U.tag}")
    return value


@dataclass
class IntertwiningCertificate:
    value: Fraction
    double_cosets: int
    surviving: int


def intertwining_certificate(rep: RepDescriptor) -> IntertwiningCertificate:
    """<Ind rho, Ind rho> with cosets pruned by the transport of beta.

    Over H x H, rho and its x-conjugate restrict on K_1 to multiples of
    psi_beta and psi_{x beta x^-1}; these are orthogonal unless xbar
    centralises beta, so only cosets with transport equal to beta survive.
    """
    fam = rep.family
    dc = double_cosets(fam.H, fam.H, cache=fam.cache)
    live = [i for i in range(len(dc)) if np.array_equal(dc.transported[i] % fam.ctx.p, fam.beta)]
    total = Fraction(0)
    for i in live:
        x = dc.reps[i]
        if not bool(fam.H.contains(x)):
            raise AssertionError("surviving coset representative outside H")
        # x in H: the conjugate character equals rho, so the term is <rho, rho>_H
        total += _norm_on_H(rep)
    return IntertwiningCertificate(total, len(dc), len(live))


def _norm_on_H(rep: RepDescriptor) -> Fraction:
    """(1/|H|) sum |chi_rho|^2, evaluated on the transversal (|chi_rho| is constant on K_1-cosets)."""
    fam = rep.family
    T = transversal(fam.H)
    coef, expo, M = fam.rho_terms(rep.rho_spec, rep.twist, fam.element_data(T.lifts))
    t = coef.shape[1]
    c = (coef[:, :, None] * coef[:, None, :]).reshape(len(coef), t * t)
    e = ((expo[:, :, None] - expo[:, None, :]) % M).reshape(len(coef), t * t)
    value = _segment_sums(np.zeros(len(coef), dtype=np.int64), np.array([len(T)]), c, e, M)
    if not isinstance(value, Fraction):
        raise IntegralityError(value, f"{rep.label()} norm")
    return value


def self_intertwining(rep: RepDescriptor) -> Fraction:
    return intertwining_certificate(rep).value


# -- cuspidality --------------------------------------------------------------

def is_strongly_cuspidal(orbit: OrbitClass) -> bool:
    return orbit.strongly_cuspidal_eligible


def geometric_radicals(ctx: GroupContext) -> list[BlockUnipotent]:
    return [BlockUnipotent(ctx, i, ctx.n - i) for i in range(1, ctx.n)]


def cuspidality_tests(ctx: GroupContext) -> list[GroupDescriptor]:
    return [*geometric_radicals(ctx), InfinitesimalRadical(ctx, 1)]


def criterion_subgroup(ctx: GroupContext) -> BlockUnipotent:
    half = ctx.n // 2
    return BlockUnipotent(ctx, half, ctx.n - half)


@dataclass
class CuspidalityReport:
    label: str
    dimension: int
    multiplicities: dict[tuple[str, int], Fraction]
    cuspidal: bool
    strongly_cuspidal: bool
    criterion_value: Fraction
    criterion_subgroup: str
    self_intertwining: Fraction | None = None
    extra: dict = field(default_factory=dict)

    @property
    def criterion_holds(self) -> bool:
        """rho has no fixed vector on H cap U(n/2, n/2)."""
        return self.criterion_value == 0

    def multiplicity_table(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for (tag, j), v in sorted(self.multiplicities.items()):
            out.setdefault(tag, []).append(int(v))
        return out

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "dimension": self.dimension,
            "cuspidal": self.cuspidal,
            "strongly_cuspidal": self.strongly_cuspidal,
            "criterion_subgroup": self.criterion_subgroup,
            "criterion_value": _json_number(self.criterion_value),
            "multiplicities": {tag: vals for tag, vals in self.multiplicity_table().items()},
        }
        if self.self_intertwining is not None:
            out["self_intertwining"] = _json_number(self.self_intertwining)
        out.update(self.extra)
        return out

    def verdict_key(self) -> tuple:
        """Everything except the label, for comparisons across parametrisations."""
        return (self.dimension, self.cuspidal, self.strongly_cuspidal, self.criterion_value,
                tuple(sorted(self.multiplicities.items())))


def _json_number(v: Fraction):
    return int(v) if v.denominator == 1 else str(v)


def criterion_value(rep: RepDescriptor) -> Fraction:
    S = conj_intersections(rep.H, rep.ctx.identity[None], criterion_subgroup(rep.ctx))[0]
    return trivial_multiplicity(rep, S)


def is_cuspidal(rep: RepDescriptor, with_certificate: bool = False) -> CuspidalityReport:
    """Mackey multiplicities against every radical and every twist."""
    ctx = rep.ctx
    mult = {}
    for U in cuspidality_tests(ctx):
        for j in range(rep.family.twist_order):
            mult[U.tag, j] = mackey_multiplicity(rep.twisted(j), U)
    cuspidal = all(v == 0 for v in mult.values())
    report = CuspidalityReport(
        label=rep.label(),
        dimension=rep.dimension,
        multiplicities=mult,
        cuspidal=cuspidal,
        strongly_cuspidal=cuspidal and is_strongly_cuspidal(rep.orbit),
        criterion_value=criterion_value(rep),
        criterion_subgroup=criterion_subgroup(ctx).tag,
    )
    if with_certificate:
        cert = intertwining_certificate(rep)
        report.self_intertwining = cert.value
        report.extra["double_cosets_HH"] = cert.double_cosets
        report.extra["surviving_cosets"] = cert.surviving
    return report


# -- the families of the classification -----------------------------------------

def standard_families(ctx: GroupContext, psi: AdditiveCharacter | None = None, eta_poly=None,
                      include=("beta1", "beta2", "quartic"), cache=None) -> list[OrbitFamily]:
    """beta_1, beta_2 (theta-parametrised) and the irreducible-quartic orbits."""
    p = ctx.p
    beta1, beta2 = orbit_reps_quadratic(p, eta_poly)
    out = []
    if "beta1" in include:
        out.append(OrbitFamily(ctx, beta1, psi, name="beta1", cache=cache))
    if "beta2" in include:
        out.append(OrbitFamily(ctx, beta2, psi, theta_field=quadratic_extension(p, eta_poly),
                               name="beta2", cache=cache))
    if "quartic" in include:
        for k, beta in enumerate(quartic_orbit_reps(p)):
            out.append(OrbitFamily(ctx, beta, psi, name=f"quartic{k}", cache=cache))
    return out


def _family_reports(args) -> list[CuspidalityReport]:
    variant, p, scale, eta_poly, name, psi_tilde, certificates = args
    ctx = GroupContext(LocalRing(p, variant))
    psi = AdditiveCharacter(ctx.ring, scale)
    fam = next(f for f in standard_families(ctx, psi, eta_poly, include=(_kind(name),))
               if f.name == name)
    return [is_cuspidal(r, certificates) for r in fam.representations(psi_tilde)]


def _kind(name: str) -> str:
    return "quartic" if name.startswith("quartic") else name


def enumerate_representations(q: int, variant: str = "zp2", psi_scale: int = 1, eta_poly=None,
                              psi_tilde: int = 0, include=("beta1", "beta2", "quartic"),
                              certificates: bool = False, workers: int = 1,
                              cache=None) -> list[tuple[RepDescriptor, CuspidalityReport]]:
    ctx = GroupContext(LocalRing(q, variant))
    psi = AdditiveCharacter(ctx.ring, psi_scale)
    families = standard_families(ctx, psi, eta_poly, include, cache=cache)
    reps = [fam.representations(psi_tilde) for fam in families]
    if workers > 1 and len(families) > 1:
        jobs = [(ctx.ring.variant, q, psi_scale, eta_poly, f.name, psi_tilde, certificates) for f in families]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_family_reports, jobs))
    else:
        reports = [[is_cuspidal(r, certificates) for r in rs] for rs in reps]
    return [pair for rs, rp in zip(reps, reports) for pair in zip(rs, rp)]


# -- the vanishing-pattern argument for P(1,3) and P(3,1) -------------------------

@dataclass
class PatternCheck:
    column_matrices: int
    column_with_linear_factor: int
    row_matrices: int
    row_with_linear_factor: int
    # patterned matrices whose characteristic polynomial is (irreducible quadratic)^2
    quadratic_squares: int

    @property
    def ok(self) -> bool:
        return (self.column_matrices == self.column_with_linear_factor
                and self.row_matrices == self.row_with_linear_factor
                and self.quadratic_squares == 0)


def _has_linear_factor(polys: np.ndarray, p: int) -> np.ndarray:
    """Whether each characteristic polynomial (rows, lowest degree first) has a root in F_p."""
    hit = np.zeros(len(polys), dtype=bool)
    for a in range(p):
        val = np.zeros(len(polys), dtype=np.int64)
        for k in range(polys.shape[1] - 1, -1, -1):
            val = (val * a + polys[:, k]) % p
        hit |= val == 0
    return hit


def pattern_check(p: int, n: int = 4) -> PatternCheck:
    """b with b_{i1} = 0 (i > 1), and aI + b with first row of b zero, all have a linear factor."""
    col_free = [(i, j) for i in range(n) for j in range(n) if not (j == 0 and i > 0)]
    row_free = [(i, j) for i in range(1, n) for j in range(n)]

    def matrices(free):
        codes = np.arange(p ** len(free))
        M = np.zeros((len(codes), n, n), dtype=np.int64)
        idx = np.array(free)
        M[:, idx[:, 0], idx[:, 1]] = (codes[:, None] // p ** np.arange(len(free))) % p
        return M

    F = FiniteField.prime(p)
    squares = np.array([F.poly_mul(f, f) for f in F.irreducibles(2)], dtype=np.int64).reshape(-1, n + 1)

    def count_squares(polys):
        return int(np.any(np.all(polys[:, None] == squares[None], axis=-1), axis=1).sum())

    col_polys = char_poly_batch(matrices(col_free), p)
    col_ok = int(_has_linear_factor(col_polys, p).sum())
    bad = count_squares(col_polys)
    rows = matrices(row_free)
    row_total = row_ok = 0
    for a in range(p):
        polys = char_poly_batch((rows + a * np.eye(n, dtype=np.int64)) % p, p)
        row_total += len(polys)
        row_ok += int(_has_linear_factor(polys, p).sum())
        bad += count_squares(polys)
    return PatternCheck(len(col_polys), col_ok, row_total, row_ok, bad)


@dataclass
class LemmaCheck:
    direct_ok: bool
    failures: list[tuple[str, str, int, int]]
    pattern: PatternCheck

    @property
    def ok(self) -> bool:
        return self.direct_ok and self.pattern.ok


def verify_lemma_first(q: int, variant: str = "zp2",
                       pairs: list[tuple[RepDescriptor, CuspidalityReport]] | None = None) -> LemmaCheck:
    """Multiplicity 0 against U(1,3), U(3,1), UInf(1) for every beta_1/beta_2 representation,
    plus the vanishing-pattern oracle."""
    if pairs is None:
        pairs = enumerate_representations(q, variant, include=("beta1", "beta2"))
    tags = {"U(1,3)", "U(3,1)", "UInf(1)"}
    failures = []
    for rep, report in pairs:
        if rep.family.name not in ("beta1", "beta2"):
            continue
        for (tag, j), v in sorted(report.multiplicities.items()):
            if tag in tags and v != 0:
                failures.append((report.label, tag, j, int(v)))
    return LemmaCheck(not failures, failures, pattern_check(q))


# -- brute force on a small group ---------------------------------------------------

BRUTE_CAP = 5000


def brute_force_setup(ctx: GroupContext):
    G = FullGroup(ctx)
    if G.order() > BRUTE_CAP:
        raise CapExceeded(f"brute force needs |G| <= {BRUTE_CAP}, got {G.order()}")
    els = members(G)
    inv = ctx.inv(els)
    conj = ctx.mul(ctx.mul(els[:, None], els[None]), inv[:, None])  # conj[y, g] = y g y^-1
    return els, conj


def induced_character(rep: RepDescriptor, conj: np.ndarray) -> list[Cyclotomic]:
    """Ind_H^G chi_rho on every element, from the full conjugation table."""
    fam = rep.family
    ny, ng = conj.shape[:2]
    flat = conj.reshape(-1, fam.ctx.n, fam.ctx.n)
    inH = fam.H.contains(flat)
    gidx = np.tile(np.arange(ng), ny)[inH]
    coef, expo, M = fam.rho_terms(rep.rho_spec, rep.twist, fam.element_data(flat[inH]))
    counts = np.zeros((ng, M), dtype=np.int64)
    np.add.at(counts, (np.broadcast_to(gidx[:, None], expo.shape).ravel(), expo.ravel()), coef.ravel())
    order_H = fam.H.order()
    return [Cyclotomic.from_counts(M, row) / order_H for row in counts]


def brute_force_intertwining(rep: RepDescriptor, U: GroupDescriptor, setup=None) -> Fraction:
    """<Ind_H^G rho, Ind_U^G 1> from explicitly materialised induced characters."""
    els, conj = setup or brute_force_setup(rep.ctx)
    chi = induced_character(rep, conj)
    inU = U.contains(conj.reshape(-1, rep.ctx.n, rep.ctx.n)).reshape(conj.shape[:2])
    fixed = inU.sum(axis=0)  # |U| * Ind_U^G 1 (g)
    total = Cyclotomic.rational(0)
    for value, f in zip(chi, fixed):
        if f:
            total = total + value * int(f)
    total = total / (len(els) * U.order())
    if not total.is_rational():
        raise IntegralityError(total, "brute force")
    return total.to_fraction()


def brute_force_norm(rep: RepDescriptor, setup=None) -> Fraction:
    els, conj = setup or brute_force_setup(rep.ctx)
    chi = induced_character(rep, conj)
    total = Cyclotomic.rational(0)
    for v in chi:
        total = total + v * v.conjugate()
    return (total / len(els)).to_fraction()


def regular_orbit_reps(p: int, n: int = 2) -> list[np.ndarray]:
    """Companion matrices of all monic degree-n polynomials (one per regular orbit)."""
    return [companion(f, p) for f in FiniteField.prime(p).monic_polys(n)]
