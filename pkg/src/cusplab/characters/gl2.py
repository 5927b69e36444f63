"""The irreducible characters of GL_2(F_Q) from the four classical families.

Field elements are codes of a :class:`FiniteField` ``F`` of order Q, and
F_{Q^2} is built as an extension of ``F`` so that F keeps its codes.  With g a
generator of F_{Q^2}^x and m = Q^2 - 1, a character alpha_i of F^x is
a -> zeta_m^(i log a) (log a is a multiple of Q + 1) and a character nu_j of
F_{Q^2}^x is z -> zeta_m^(j log z).  All values live in Q(zeta_m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from cusplab.ring_core.cyclotomic import Cyclotomic, normal_forms
from cusplab.ring_core.fields import FiniteField


@dataclass(frozen=True)
class GL2Class:
    kind: str  # central | jordan | split | elliptic
    params: tuple[int, ...]  # field codes (a,), (a,), (a, b), (log z, log z^Q)
    size: int
    representative: tuple[tuple[int, int], tuple[int, int]]

    def label(self) -> str:
        return f"{self.kind}{list(self.params)}"


@dataclass
class ClassFunction:
    table: GL2Table
    label: str
    family: str
    values: list[Cyclotomic]
    params: tuple[int, ...] = ()
    row: int = -1

    @property
    def dimension(self) -> int:
        v = self.values[self.table.identity_class]
        return int(v.to_fraction())

    def __call__(self, g) -> Cyclotomic:
        return self.values[int(self.table.class_indices(np.asarray(g)[None])[0])]

    def character_sum(self, X) -> Cyclotomic:
        counts = np.bincount(self.table.class_indices(X), minlength=len(self.values))
        total = Cyclotomic.rational(0, self.table.m)
        for c, v in zip(counts, self.values):
            if c:
                total = total + v * int(c)
        return total

    def norm(self) -> Fraction:
        return self.table.inner(self, self)

    def to_json(self) -> dict:
        return {"label": self.label, "family": self.family, "dimension": self.dimension,
                "values": [v.to_json() for v in self.values]}


@dataclass
class GL2Table:
    F: FiniteField
    classes: list[GL2Class] = field(default_factory=list)
    characters: list[ClassFunction] = field(default_factory=list)
    # sparse values: character r on class c is sum_t coef[r,c,t] * zeta_m^expo[r,c,t]
    coef: np.ndarray | None = None
    expo: np.ndarray | None = None

    @property
    def Q(self) -> int:
        return self.F.size

    @property
    def m(self) -> int:
        return self.Q * self.Q - 1

    @property
    def order(self) -> int:
        Q = self.Q
        return (Q * Q - 1) * (Q * Q - Q)

    @cached_property
    def E(self) -> FiniteField:
        return FiniteField.extension(self.F, self.F.first_irreducible(2))

    @property
    def identity_class(self) -> int:
        return self._central[1]

    # -- group operations on 2x2 code matrices ------------------------------
    def mul(self, A, B) -> np.ndarray:
        A, B = np.asarray(A), np.asarray(B)
        F = self.F
        out = np.empty(np.broadcast_shapes(A.shape, B.shape), dtype=np.int64)
        for i in range(2):
            for j in range(2):
                out[..., i, j] = F.add(F.mul(A[..., i, 0], B[..., 0, j]), F.mul(A[..., i, 1], B[..., 1, j]))
        return out

    def key(self, A) -> np.ndarray:
        A = np.asarray(A)
        Q = self.Q
        return A[..., 0, 0] + Q * (A[..., 0, 1] + Q * (A[..., 1, 0] + Q * A[..., 1, 1]))

    def elements(self) -> np.ndarray:
        Q = self.Q
        codes = np.arange(Q**4)
        A = np.stack([codes % Q, (codes // Q) % Q, (codes // Q**2) % Q, codes // Q**3], -1).reshape(-1, 2, 2)
        return A[self.det(A) != 0]

    def det(self, A) -> np.ndarray:
        F = self.F
        A = np.asarray(A)
        return F.sub(F.mul(A[..., 0, 0], A[..., 1, 1]), F.mul(A[..., 0, 1], A[..., 1, 0]))

    # -- class identification ---------------------------------------------
    @cached_property
    def _central(self) -> np.ndarray:
        out = np.full(self.Q, -1, dtype=np.int64)
        for k, c in enumerate(self.classes):
            if c.kind == "central":
                out[c.params[0]] = k
        return out

    @cached_property
    def _by_char_poly(self) -> np.ndarray:
        """Class of a non-scalar element with trace t and determinant d."""
        F, E, Q, m = self.F, self.E, self.Q, self.m
        index = {(c.kind, c.params): k for k, c in enumerate(self.classes)}
        out = np.full((Q, Q), -1, dtype=np.int64)
        for t in range(Q):
            for d in range(1, Q):
                roots = [a for a in range(Q)
                         if F.add(F.sub(F.mul(a, a), F.mul(t, a)), d) == 0]
                if len(roots) == 2:
                    out[t, d] = index["split", tuple(sorted(roots))]
                elif len(roots) == 1:
                    out[t, d] = index["jordan", (roots[0],)]
                else:
                    z = next(z for z in range(1, E.size)
                             if E.add(E.sub(E.mul(z, z), E.mul(t, z)), d) == 0)
                    k = int(E.log_table[z])
                    out[t, d] = index["elliptic", tuple(sorted((k, (k * Q) % m)))]
        return out

    def class_indices(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        F = self.F
        scalar = (X[..., 0, 1] == 0) & (X[..., 1, 0] == 0) & (X[..., 0, 0] == X[..., 1, 1])
        t = F.add(X[..., 0, 0], X[..., 1, 1])
        d = self.det(X)
        if np.any(d == 0):
            raise ValueError("singular matrix")
        return np.where(scalar, self._central[X[..., 0, 0]], self._by_char_poly[t, d])

    # -- orthogonality ----------------------------------------------------------
    def inner(self, a: ClassFunction, b: ClassFunction) -> Fraction:
        total = Cyclotomic.rational(0, self.m)
        for c, x, y in zip(self.classes, a.values, b.values):
            total = total + x * y.conjugate() * c.size
        return (total / self.order).to_fraction()

    def _gram(self, axis: str) -> np.ndarray:
        """Exact sums of chi_a * conj(chi_b) over classes (axis="chars")
        weighted by class size, or over characters (axis="classes")."""
        m = self.m
        coef, expo = self.coef, self.expo
        sizes = np.array([c.size for c in self.classes], dtype=np.int64)
        if axis == "classes":
            coef, expo = coef.transpose(1, 0, 2), expo.transpose(1, 0, 2)
            weight = np.ones(coef.shape[1], dtype=np.int64)
        else:
            weight = sizes
        n = coef.shape[0]
        counts = np.zeros((n, n, m), dtype=np.int64)
        for a in range(n):
            c = coef[a][None, :, :, None] * coef[:, :, None, :] * weight[None, :, None, None]
            e = (expo[a][None, :, :, None] - expo[:, :, None, :]) % m
            b = np.broadcast_to(np.arange(n)[:, None, None, None], c.shape)
            np.add.at(counts[a], (b.ravel(), e.ravel()), c.ravel())
        return normal_forms(counts, m)

    def first_orthogonality(self) -> bool:
        nf = self._gram("chars")
        expect = np.zeros_like(nf)
        expect[..., 0] = self.order * np.eye(len(self.characters), dtype=np.int64)
        return bool(np.array_equal(nf, expect))

    def second_orthogonality(self) -> bool:
        nf = self._gram("classes")
        expect = np.zeros_like(nf)
        expect[..., 0] = np.diag([self.order // c.size for c in self.classes])
        return bool(np.array_equal(nf, expect))

    def by_label(self, label: str) -> ClassFunction:
        return next(c for c in self.characters if c.label == label)

    def to_json(self) -> dict:
        return {"Q": self.Q, "order": self.order, "cyclotomic_modulus": self.m,
                "classes": [{"label": c.label(), "size": c.size,
                             "representative": [list(r) for r in c.representative]}
                            for c in self.classes],
                "characters": [c.to_json() for c in self.characters]}


def _field_for(Q_or_field) -> FiniteField:
    if isinstance(Q_or_field, FiniteField):
        return Q_or_field
    Q = int(Q_or_field)
    for p in range(2, Q + 1):
        d, x = 0, 1
        while x < Q:
            x, d = x * p, d + 1
        if x == Q and all(p % k for k in range(2, p)):
            return FiniteField.of_order(p, d)
    raise ValueError(f"{Q} is not a prime power")


def gl2_character_table(Q_or_field) -> GL2Table:
    """Character table of GL_2(F_Q); pass a field to fix the element coding."""
    F = _field_for(Q_or_field)
    table = GL2Table(F)
    Q, m, E = table.Q, table.m, table.E
    log = E.log_table  # F keeps its codes inside E
    units = list(range(1, Q))

    classes = table.classes
    for a in units:
        classes.append(GL2Class("central", (a,), 1, ((a, 0), (0, a))))
    for a in units:
        classes.append(GL2Class("jordan", (a,), Q * Q - 1, ((a, 1), (0, a))))
    for i, a in enumerate(units):
        for b in units[i + 1:]:
            classes.append(GL2Class("split", (a, b), Q * (Q + 1), ((a, 0), (0, b))))
    done = set()
    for k in range(m):
        if k % (Q + 1) == 0 or k in done:
            continue
        kq = (k * Q) % m
        done.update((k, kq))
        z = int(E.exp_table[k])
        # companion matrix of the minimal polynomial X^2 - t X + d of z
        t = E.add(z, E.frobenius(z))
        d = E.mul(z, E.frobenius(z))
        classes.append(GL2Class("elliptic", tuple(sorted((k, kq))), Q * (Q - 1),
                                ((0, int(F.neg(d))), (1, int(t)))))

    # each value is a short list of (integer, exponent) terms: sum c * zeta_m^e
    def root(e, c=1):
        return [(c, int(e) % m)]

    def det_log(c: GL2Class) -> int:
        if c.kind in ("central", "jordan"):
            return 2 * int(log[c.params[0]])
        if c.kind == "split":
            return int(log[c.params[0]]) + int(log[c.params[1]])
        return (Q + 1) * c.params[0]

    rows: list[tuple[str, str, tuple, list]] = []
    for i in range(Q - 1):
        rows.append((f"linear[{i}]", "linear", (i,), [root(i * det_log(c)) for c in classes]))
    for i in range(Q - 1):
        scale = {"central": Q, "jordan": 0, "split": 1, "elliptic": -1}
        vals = [root(i * det_log(c), scale[c.kind]) if scale[c.kind] else [] for c in classes]
        rows.append((f"steinberg[{i}]", "steinberg", (i,), vals))
    for i in range(Q - 1):
        for j in range(i + 1, Q - 1):
            vals = []
            for c in classes:
                if c.kind in ("central", "jordan"):
                    vals.append(root((i + j) * int(log[c.params[0]]), Q + 1 if c.kind == "central" else 1))
                elif c.kind == "split":
                    la, lb = int(log[c.params[0]]), int(log[c.params[1]])
                    vals.append(root(i * la + j * lb) + root(i * lb + j * la))
                else:
                    vals.append([])
            rows.append((f"principal[{i},{j}]", "principal", (i, j), vals))
    seen = set()
    for j in range(m):
        jq = (j * Q) % m
        if j == jq or j in seen:
            continue
        seen.update((j, jq))
        vals = []
        for c in classes:
            if c.kind in ("central", "jordan"):
                vals.append(root(j * int(log[c.params[0]]), Q - 1 if c.kind == "central" else -1))
            elif c.kind == "split":
                vals.append([])
            else:
                k = c.params[0]
                vals.append(root(j * k, -1) + root(j * k * Q, -1))
        rows.append((f"cuspidal[{j}]", "cuspidal", (j,), vals))

    coef = np.zeros((len(rows), len(classes), 2), dtype=np.int64)
    expo = np.zeros((len(rows), len(classes), 2), dtype=np.int64)
    for r, (_, _, _, vals) in enumerate(rows):
        for c, terms in enumerate(vals):
            for t, (a, e) in enumerate(terms):
                coef[r, c, t], expo[r, c, t] = a, e
    table.coef, table.expo = coef, expo
    for r, (label, family, params, vals) in enumerate(rows):
        values = [Cyclotomic.from_terms(m, terms) for terms in vals]
        table.characters.append(ClassFunction(table, label, family, values, params, r))
    return table
