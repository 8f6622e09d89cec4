"""Brute-force verification engines for the constructive results.

Everything here works by exact linear algebra on truncated monomial
bases: kernels of powers of a linear derivation, module-span
membership with witness certificates, centralizer enumeration as a null
space, and rank over the fraction field by random evaluation with a
symbolic fraction-free fallback.  These routines are deliberately
elementary so they can serve as ground truth for the generator
constructions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .derivation import Derivation
from .errors import PreconditionError, ResourceLimitError
from .poly import (
    Exponent,
    Poly,
    grlex_key,
    monomials_of_degree,
    poly_divexact,
)
from .weitzenboeck import GeneratorSet, weitzenboeck_derivation

MONOMIAL_COUNT_CAP = 20_000

# Degree caps for the kernel-candidate search, keyed by variable count.
CANDIDATE_DEGREE_CAP = {2: 6, 3: 6, 4: 6, 5: 4, 6: 3}


def _check_linear(D: Derivation) -> None:
    # Homogeneous degree-1 coefficients keep every map here degree
    # preserving, which is what the per-degree block assembly relies on.
    for c in D.coeffs:
        if c and not (c.is_homogeneous() and c.total_degree() == 1):
            raise PreconditionError(
                "derivation must be linear (homogeneous degree-1 coefficients)"
            )


def _monomial_count(nvars: int, degree: int) -> int:
    from math import comb

    return comb(nvars + degree, degree)


def _guard_monomial_count(nvars: int, degree: int) -> None:
    count = _monomial_count(nvars, degree)
    if count > MONOMIAL_COUNT_CAP:
        raise ResourceLimitError(
            f"{count} monomials of degree <= {degree} in {nvars} variables "
            f"exceed the cap {MONOMIAL_COUNT_CAP}"
        )


@dataclass(frozen=True)
class GradedBasis:
    """An exact basis of a graded subspace of polynomials up to a degree."""

    degree_cap: int
    vectors: tuple[Poly, ...]

    def dimension(self) -> int:
        return len(self.vectors)

    def to_json(self) -> dict:
        return {
            "degree_cap": self.degree_cap,
            "dimension": len(self.vectors),
            "vectors": [v.to_json() for v in self.vectors],
        }


def _kernel_block(D: Derivation, power: int, degree: int) -> list[Poly]:
    """Kernel of D^power on the homogeneous component of a fixed degree."""
    n = D.nvars
    monos = monomials_of_degree(n, degree)
    col = {m: j for j, m in enumerate(monos)}
    size = len(monos)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for j, m in enumerate(monos):
        image = Poly(n, {m: 1})
        for _ in range(power):
            image = D(image)
        for exp, c in image.iter_terms():
            rows[col[exp]][j] = c
    vectors = linalg.nullspace(rows, size)
    return [Poly(n, {monos[j]: v[j] for j in range(size) if v[j]}) for v in vectors]


def kernel_power_basis(D: Derivation, power: int, degree: int) -> GradedBasis:
    """Exact basis of {f : deg f <= degree, D^power(f) = 0}.

    Works one homogeneous degree at a time (a linear derivation maps a
    homogeneous polynomial to a homogeneous one of the same degree), so
    the output vectors are homogeneous, RREF-normalized against the
    descending graded-lex monomial order, and sorted by degree.
    """
    if power < 1:
        raise PreconditionError("power must be >= 1")
    if degree < 0:
        raise PreconditionError("degree must be >= 0")
    _check_linear(D)
    _guard_monomial_count(D.nvars, degree)
    vectors: list[Poly] = []
    for t in range(degree + 1):
        vectors.extend(_kernel_block(D, power, t))
    return GradedBasis(degree, tuple(vectors))


def _multiplier_exponents(
    gen_degrees: Sequence[int], budget: int
) -> list[tuple[int, ...]]:
    """Exponent vectors e with sum e_g * deg_g <= budget."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, prefix: tuple[int, ...], remaining: int) -> None:
        if i == len(gen_degrees):
            out.append(prefix)
            return
        step = gen_degrees[i]
        e = 0
        while e * step <= remaining:
            rec(i + 1, prefix + (e,), remaining - e * step)
            e += 1

    rec(0, (), budget)
    return out


@dataclass(frozen=True)
class SpanCheckResult:
    """Outcome of a module-span containment test with its certificate."""

    ok: bool
    certificate: dict

    def to_json(self) -> dict:
        return {"ok": self.ok, "certificate": self.certificate}


def module_span_check(
    S: GeneratorSet | Sequence[Poly],
    kernel_gens: Sequence[Poly],
    target: GradedBasis,
    degree: int,
) -> SpanCheckResult:
    """Is every target vector in the span of {c*s} up to the degree cap?

    c runs over products of the kernel generators and s over the given
    set; only products with deg(c*s) <= degree participate.  On success
    the certificate lists one witness combination per target vector; on
    failure it reports the first vector outside the span.
    """
    elements = S.polys() if isinstance(S, GeneratorSet) else list(S)
    elements = [s for s in elements if s]
    if not kernel_gens and not elements:
        raise PreconditionError("empty generating data")
    nvars = (elements[0] if elements else kernel_gens[0]).nvars
    _guard_monomial_count(nvars, degree)
    gen_degrees = [g.total_degree() for g in kernel_gens]
    if any(d < 1 for d in gen_degrees):
        raise PreconditionError("kernel generators must be nonconstant")

    multipliers: list[tuple[tuple[int, ...], Poly]] = []
    for evec in _multiplier_exponents(gen_degrees, degree):
        p = Poly.constant(nvars, 1)
        for g, e in zip(kernel_gens, evec):
            if e:
                p = p * g**e
        multipliers.append((evec, p))

    spanning: list[tuple[int, tuple[int, ...], Poly]] = []
    for s_idx, s in enumerate(elements):
        for evec, c in multipliers:
            p = c * s
            if p and p.total_degree() <= degree:
                spanning.append((s_idx, evec, p))

    homogeneous = all(p.is_homogeneous() for _, _, p in spanning) and all(
        v.is_homogeneous() for v in target.vectors
    )

    def run_block(
        span_items: list[tuple[int, tuple[int, ...], Poly]],
        targets: list[tuple[int, Poly]],
        monos: list[Exponent],
    ) -> tuple[bool, dict]:
        col = {m: j for j, m in enumerate(monos)}
        columns = [
            [Fraction(0)] * len(monos) for _ in span_items
        ]
        for k, (_, _, p) in enumerate(span_items):
            for exp, c in p.iter_terms():
                columns[k][col[exp]] = c
        tvecs = []
        for _, v in targets:
            vec = [Fraction(0)] * len(monos)
            for exp, c in v.iter_terms():
                vec[col[exp]] = c
            tvecs.append(vec)
        solutions = linalg.solve_many(columns, tvecs)
        witnesses = []
        for (t_idx, v), sol in zip(targets, solutions):
            if sol is None:
                return False, {
                    "failed_target_index": t_idx,
                    "failed_target": v.to_json(),
                }
            combination = [
                {
                    "element_index": span_items[k][0],
                    "multiplier_exponents": list(span_items[k][1]),
                    "coefficient": str(coeff),
                }
                for k, coeff in enumerate(sol)
                if coeff
            ]
            witnesses.append({"target_index": t_idx, "combination": combination})
        return True, {"witnesses": witnesses}

    indexed_targets = list(enumerate(target.vectors))
    if homogeneous:
        witnesses: list[dict] = []
        degrees = sorted(
            {p.total_degree() for _, _, p in spanning}
            | {v.total_degree() for _, v in indexed_targets if v}
        )
        for t_idx, v in indexed_targets:
            if not v:
                witnesses.append({"target_index": t_idx, "combination": []})
        for t in degrees:
            span_t = [item for item in spanning if item[2].total_degree() == t]
            targets_t = [
                (i, v) for i, v in indexed_targets if v and v.total_degree() == t
            ]
            if not targets_t:
                continue
            ok, cert = run_block(span_t, targets_t, monomials_of_degree(nvars, t))
            if not ok:
                return SpanCheckResult(False, cert)
            witnesses.extend(cert["witnesses"])
        witnesses.sort(key=lambda w: w["target_index"])
        return SpanCheckResult(True, {"witnesses": witnesses})

    monos: list[Exponent] = []
    for t in range(degree + 1):
        monos.extend(monomials_of_degree(nvars, t))
    ok, cert = run_block(spanning, indexed_targets, monos)
    return SpanCheckResult(ok, cert)


def centralizer_basis(D: Derivation, degree: int) -> list[Derivation]:
    """Basis of {T : coefficient degree <= degree, [T, D] = 0}.

    D must be linear.  The commutator with D is a degree-preserving
    linear map on the space of derivations with homogeneous coefficients,
    so the null space is assembled one coefficient degree at a time.
    """
    _check_linear(D)
    if degree < 0:
        raise PreconditionError("degree must be >= 0")
    n = D.nvars
    _guard_monomial_count(n, degree)
    out: list[Derivation] = []
    for t in range(degree + 1):
        monos = monomials_of_degree(n, t)
        col_index = {
            (i, m): i * len(monos) + j
            for i in range(n)
            for j, m in enumerate(monos)
        }
        ncols = n * len(monos)
        rows = [[Fraction(0)] * ncols for _ in range(ncols)]
        for i in range(n):
            for j, m in enumerate(monos):
                unit = Derivation(
                    tuple(
                        Poly(n, {m: 1}) if k == i else Poly.zero(n)
                        for k in range(n)
                    )
                )
                br = unit.bracket(D)
                for k in range(n):
                    for exp, c in br.coeffs[k].iter_terms():
                        rows[col_index[(k, exp)]][col_index[(i, m)]] = c
        for v in linalg.nullspace(rows, ncols):
            coeffs = []
            for i in range(n):
                terms = {
                    monos[j]: v[i * len(monos) + j]
                    for j in range(len(monos))
                    if v[i * len(monos) + j]
                }
                coeffs.append(Poly(n, terms))
            out.append(Derivation(tuple(coeffs)))
    return out


def derivation_span_equal(
    first: Sequence[Derivation], second: Sequence[Derivation]
) -> bool:
    """Do two finite sets of derivations span the same rational subspace?"""
    if not first and not second:
        return True
    n = (first[0] if first else second[0]).nvars
    support: set[tuple[int, Exponent]] = set()
    for T in list(first) + list(second):
        if T.nvars != n:
            raise PreconditionError("derivations live in different rings")
        for i, c in enumerate(T.coeffs):
            support.update((i, exp) for exp, _ in c.iter_terms())
    coords = sorted(support, key=lambda im: (im[0], grlex_key(im[1])))
    index = {im: k for k, im in enumerate(coords)}

    def flatten(T: Derivation) -> list[Fraction]:
        v = [Fraction(0)] * len(coords)
        for i, c in enumerate(T.coeffs):
            for exp, coeff in c.iter_terms():
                v[index[(i, exp)]] = coeff
        return v

    rows_a = [flatten(T) for T in first]
    rows_b = [flatten(T) for T in second]
    return linalg.rref(rows_a)[0] == linalg.rref(rows_b)[0]


@dataclass(frozen=True)
class RankResult:
    """Rank over the fraction field with the evidence used to accept it."""

    rank: int
    method: str  # "sampled" or "symbolic"
    points: tuple[tuple[int, ...], ...]
    sampled_ranks: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "method": self.method,
            "points": [list(p) for p in self.points],
            "sampled_ranks": list(self.sampled_ranks),
        }


def symbolic_rank(matrix: Sequence[Sequence[Poly]]) -> int:
    """Fraction-free (Bareiss) rank of a polynomial matrix.

    Pivots are chosen by minimal total degree among the remaining
    entries, ties broken by column then row order; every division is
    exact by the Bareiss determinant identity.
    """
    m = [list(row) for row in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    row_perm = list(range(nrows))
    col_perm = list(range(ncols))
    one = Poly.constant(m[0][0].nvars, 1)
    prev = one
    r = 0
    while r < min(nrows, ncols):
        best = None
        for cj in range(r, ncols):
            for ri in range(r, nrows):
                entry = m[row_perm[ri]][col_perm[cj]]
                if entry:
                    key = (entry.total_degree(), cj, ri)
                    if best is None or key < best[0]:
                        best = (key, ri, cj)
        if best is None:
            break
        _, ri, cj = best
        row_perm[r], row_perm[ri] = row_perm[ri], row_perm[r]
        col_perm[r], col_perm[cj] = col_perm[cj], col_perm[r]
        pivot = m[row_perm[r]][col_perm[r]]
        for i in range(r + 1, nrows):
            for j in range(r + 1, ncols):
                num = (
                    m[row_perm[i]][col_perm[j]] * pivot
                    - m[row_perm[i]][col_perm[r]] * m[row_perm[r]][col_perm[j]]
                )
                m[row_perm[i]][col_perm[j]] = poly_divexact(num, prev)
            m[row_perm[i]][col_perm[r]] = Poly.zero(pivot.nvars)
        prev = pivot
        r += 1
    return r


def rank_over_fractions(
    derivations: Sequence[Derivation],
    seed: int = 0,
    max_retries: int = 4,
) -> RankResult:
    """Rank of the n x |Ts| coefficient matrix over the fraction field.

    Evaluates at uniform random integer points in [-10^6, 10^6]; a rank
    is accepted once two consecutive samples agree (specialization can
    only drop rank, never raise it).  If the retry budget runs out the
    symbolic fraction-free path decides.
    """
    if not derivations:
        raise PreconditionError("need at least one derivation")
    n = derivations[0].nvars
    for T in derivations:
        if T.nvars != n:
            raise PreconditionError("derivations live in different rings")
    coeff_matrix = [[T.coeffs[i] for T in derivations] for i in range(n)]
    rng = random.Random(seed)
    points: list[tuple[int, ...]] = []
    ranks: list[int] = []

    def sample() -> int:
        point = tuple(rng.randint(-(10**6), 10**6) for _ in range(n))
        points.append(point)
        numeric = [
            [entry.evaluate([Fraction(v) for v in point]) for entry in row]
            for row in coeff_matrix
        ]
        return linalg.rank(numeric)

    ranks.append(sample())
    ranks.append(sample())
    while ranks[-1] != ranks[-2] and len(ranks) < 2 + max_retries:
        ranks.append(sample())
    if ranks[-1] == ranks[-2]:
        return RankResult(ranks[-1], "sampled", tuple(points), tuple(ranks))
    exact = symbolic_rank(coeff_matrix)
    return RankResult(exact, "symbolic", tuple(points), tuple(ranks))


def kernel_generator_candidates(n: int, degree: int) -> list[Poly]:
    """Low-degree kernel elements outside the subalgebra of earlier picks.

    Walks the homogeneous kernel components of the basic Weitzenboeck
    derivation by ascending degree and keeps every basis vector not
    already in the algebra span of the candidates chosen so far.  The
    output provably spans Ker D up to the requested degree but is only a
    candidate list as an algebra generating set beyond it.
    """
    cap = CANDIDATE_DEGREE_CAP.get(n)
    if cap is None:
        raise PreconditionError(f"candidate search supports 2 <= n <= 6, got {n}")
    if degree > cap:
        raise ResourceLimitError(
            f"degree {degree} exceeds the candidate-search cap {cap} for n={n}"
        )
    D = weitzenboeck_derivation(n)
    candidates: list[Poly] = []
    for t in range(1, degree + 1):
        kernel_t = _kernel_block(D, 1, t)
        if not kernel_t:
            continue
        monos = monomials_of_degree(n, t)
        col = {m: j for j, m in enumerate(monos)}

        def flatten(p: Poly) -> list[Fraction]:
            v = [Fraction(0)] * len(monos)
            for exp, c in p.iter_terms():
                v[col[exp]] = c
            return v

        products: list[list[Fraction]] = []
        degs = [c.total_degree() for c in candidates]
        for evec in _multiplier_exponents(degs, t):
            if sum(e * d for e, d in zip(evec, degs)) != t:
                continue
            p = Poly.constant(n, 1)
            for g, e in zip(candidates, evec):
                if e:
                    p = p * g**e
            products.append(flatten(p))
        reduced, pivots = linalg.rref(products)
        for v in kernel_t:
            vec = flatten(v)
            if not linalg.in_row_space(reduced, pivots, vec):
                candidates.append(v)
                reduced, pivots = linalg.rref(reduced + [vec])
    return candidates
