"""
Seeded instance generators.

Every generator is a pure function of its GenSpec: the seed feeds a PCG64
bit generator (numpy's ``Generator(PCG64(SeedSequence([seed, attempt])))``)
so identical specs give identical bits. Before an instance is released its
family checklist is run; a draw that fails certification is discarded and
the next attempt index is tried, up to the ``generation_retries`` setting.

Most theorem families live in one "block algebra": the dimension is split
into blocks of size K with the block shift N. Right operators are
a*I + p(N) and left operators b*I + q(N*) blockwise, so right operators
commute with each other, left operators commute with each other, and every
commutation hypothesis holds by construction. On a block, the scalar pair
(b, a) decides which defect transform is nilpotent:

    iso   b*a = 1      triangle nilpotent
    sym   b = a real   delta nilpotent
    both  b = a = +-1  both nilpotent
    any   independent  neither in general
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..models.errors import ConfigurationError, GenerationFailedError
from ..models.instances import GeneratorFamily, GenSpec, InstanceBundle
from ..models.matrix import CMatrix
from ..models.tolerance import ToleranceContext, resolve_tolerance
from ..utils.matrix_ops import kron, nilpotency_index
from .classifiers import OrderKind, minimal_order, minimal_pair_orders, order_residual
from .drazin import core_nilpotent
from .hypotheses import CHECKLISTS, PROP1_COMBOS, THEOREM1_ORDERS, composite

logger = logging.getLogger(__name__)

SCALAR_MODULUS = (0.5, 1.5)
NILPOTENT_COEFF = (0.3, 1.0)
MAX_COMMUTING = 6
MAX_TENSOR_FACTOR_DIM = 4


class InstanceRejected(Exception):
    """A draw failed certification; the generator retries with the next attempt."""


def make_rng(seed: int, attempt: int = 0) -> np.random.Generator:
    """PCG64 generator for (seed, attempt)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, attempt])))


# Elementary constructors

def jordan_block(lam: complex, k: int) -> CMatrix:
    """
    Return lam*I + upper shift of size k.

    Examples:
        >>> jordan_block(1, 2)   # [[1, 1], [0, 1]]
        >>> jordan_block(0, 3) @ jordan_block(0, 3) @ jordan_block(0, 3)  # zero
    """
    if k < 1:
        raise ValueError(f"Jordan block size must be positive, got {k}")
    return CMatrix(complex(lam) * np.eye(k) + np.eye(k, k=1))


def _gaussian(rng: np.random.Generator, d: int) -> np.ndarray:
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)


def _unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    # polar factor of a complex Gaussian
    u, _, vh = scipy.linalg.svd(_gaussian(rng, d))
    return u @ vh


def _selfadjoint(rng: np.random.Generator, d: int) -> np.ndarray:
    G = _gaussian(rng, d)
    return (G + G.conj().T) / 2.0


def _random_complex(rng: np.random.Generator, low: float, high: float) -> complex:
    radius = rng.uniform(low, high)
    angle = rng.uniform(0.0, 2.0 * np.pi)
    return complex(radius * np.exp(1j * angle))


def _random_sign(rng: np.random.Generator) -> float:
    return 1.0 if rng.integers(0, 2) == 0 else -1.0


def random_unitary(spec: GenSpec) -> CMatrix:
    """Seeded unitary of size spec.dim (orthonormalized complex Gaussian)."""
    return CMatrix(_unitary(make_rng(spec.seed), spec.dim))


def random_selfadjoint(spec: GenSpec) -> CMatrix:
    """Seeded selfadjoint (G + G*)/2 of size spec.dim."""
    return CMatrix(_selfadjoint(make_rng(spec.seed), spec.dim))


def _commuting_arrays(
    rng: np.random.Generator, d: int, count: int, nilpotent: bool
) -> List[np.ndarray]:
    J = np.triu(_gaussian(rng, d), k=1 if nilpotent else 0)
    J = J / max(1.0, float(np.linalg.norm(J, 2)))
    family = []
    for _ in range(count):
        coeffs = [_random_complex(rng, 0.3, 1.0) / (k + 1) for k in range(d)]
        if nilpotent:
            coeffs[0] = 0.0
        # Horner in J
        P = np.zeros((d, d), dtype=np.complex128)
        for c in reversed(coeffs):
            P = P @ J + c * np.eye(d)
        family.append(P)
    return family


def gaussian_matrix(rng: np.random.Generator, d: int) -> CMatrix:
    """Complex Gaussian matrix scaled by 1/sqrt(d), spectral norm of order 2."""
    return CMatrix(_gaussian(rng, d) / np.sqrt(d))


def commuting_matrices(
    rng: np.random.Generator, d: int, count: int, nilpotent: bool = False
) -> List[CMatrix]:
    """``count`` polynomials in one random upper-triangular matrix."""
    return [CMatrix(a) for a in _commuting_arrays(rng, d, count, nilpotent)]


def commuting_family(spec: GenSpec, count: Optional[int] = None) -> List[CMatrix]:
    """
    Polynomials of degree < dim in one seeded upper-triangular matrix J.

    Parameters:
        spec (GenSpec): Seed and dim; params ``count`` (<= 6) and
            ``nilpotent`` (1 makes J strictly upper triangular and drops
            constant terms, so every member is nilpotent).
        count (Optional[int]): Overrides the ``count`` param.
    """
    count = spec.int_param("count", 3) if count is None else count
    if not 1 <= count <= MAX_COMMUTING:
        raise ConfigurationError(f"count must be in 1..{MAX_COMMUTING}, got {count}")
    nilpotent = bool(spec.int_param("nilpotent", 0))
    return commuting_matrices(make_rng(spec.seed), spec.dim, count, nilpotent)


# Block algebra

@dataclass(frozen=True)
class BlockAlgebra:
    """Block sizes of the commuting construction; see the module docstring."""

    sizes: Tuple[int, ...]

    @classmethod
    def split(cls, dim: int, block: int) -> "BlockAlgebra":
        block = max(1, min(block, dim))
        full, rest = divmod(dim, block)
        return cls((block,) * full + ((rest,) if rest else ()))

    @property
    def dim(self) -> int:
        return sum(self.sizes)

    @property
    def blocks(self) -> int:
        return len(self.sizes)

    def shift(self) -> CMatrix:
        return CMatrix(scipy.linalg.block_diag(*[np.eye(k, k=1) for k in self.sizes]))

    def polynomial(
        self,
        scalars: Sequence[complex],
        rng: np.random.Generator,
        active: Optional[Sequence[bool]] = None,
    ) -> np.ndarray:
        """Blockwise a_b*I + sum_k c_k N_b^k with random c_k (skipped where inactive)."""
        active = [True] * self.blocks if active is None else active
        blocks = []
        for size, a, on in zip(self.sizes, scalars, active):
            N = np.eye(size, k=1)
            P = complex(a) * np.eye(size, dtype=np.complex128)
            Nk = np.eye(size)
            for _ in range(1, size):
                Nk = Nk @ N
                coeff = _random_complex(rng, *NILPOTENT_COEFF)
                if on:
                    P = P + coeff * Nk
            blocks.append(P)
        return scipy.linalg.block_diag(*blocks)

    def right(self, scalars, rng, active=None) -> CMatrix:
        return CMatrix(self.polynomial(scalars, rng, active))

    def left(self, scalars, rng, active=None) -> CMatrix:
        # p(N)^T = p(N*) for the real shift
        return CMatrix(self.polynomial(scalars, rng, active).T)

    def pair(self, kinds: Sequence[str], rng: np.random.Generator) -> Tuple[CMatrix, CMatrix]:
        """(left, right) operator pair with the per-block scalar kinds."""
        scalars = [pair_scalars(kind, rng) for kind in kinds]
        B = self.left([b for b, _ in scalars], rng)
        A = self.right([a for _, a in scalars], rng)
        return B, A

    def weight(self, rng: np.random.Generator, mode: str) -> CMatrix:
        """X = I, or a random matrix block-diagonal along the algebra blocks."""
        if mode == "identity":
            return CMatrix.identity(self.dim)
        if mode != "random":
            raise ConfigurationError(f"x must be 'identity' or 'random', got {mode!r}")
        return CMatrix(scipy.linalg.block_diag(*[_gaussian(rng, k) for k in self.sizes]))


def pair_scalars(kind: str, rng: np.random.Generator) -> Tuple[complex, complex]:
    """(b, a) block scalars of the given kind."""
    if kind == "iso":
        a = _random_complex(rng, *SCALAR_MODULUS)
        return 1.0 / a, a
    if kind == "sym":
        a = _random_sign(rng) * rng.uniform(*SCALAR_MODULUS)
        return a, a
    if kind == "both":
        s = _random_sign(rng)
        return s, s
    if kind == "any":
        return _random_complex(rng, *SCALAR_MODULUS), _random_complex(rng, *SCALAR_MODULUS)
    raise ValueError(f"Unknown pair kind: {kind}")


def _composite_kinds(rng: np.random.Generator, blocks: int) -> Tuple[List[str], List[str]]:
    """Per block, either the triangle pair is iso or the delta pair is sym."""
    first, second = [], []
    for _ in range(blocks):
        if rng.integers(0, 2) == 0:
            first.append("iso")
            second.append("any")
        else:
            first.append("any")
            second.append("sym")
    return first, second


def _algebra(spec: GenSpec) -> BlockAlgebra:
    order = spec.int_param("order", 3)
    if order < 1:
        raise ConfigurationError(f"order must be positive, got {order}")
    return BlockAlgebra.split(spec.dim, max(1, (order + 1) // 2))


def _bound(algebra: BlockAlgebra) -> int:
    return 2 * max(algebra.sizes) - 1


def _weight_mode(spec: GenSpec) -> str:
    return str(spec.param("x", "random"))


# Certification helpers

def _single_order(
    kind: OrderKind, B: CMatrix, A: CMatrix, X: CMatrix, bound: int, tol: ToleranceContext, what: str
) -> int:
    k = minimal_order(kind, B, A, X, min(bound, 20), tol)
    if k is None:
        raise InstanceRejected(f"{what}: no {kind.value} order <= {bound}")
    return k


def _pair_orders(
    B1: CMatrix, A1: CMatrix, B2: CMatrix, A2: CMatrix, X: CMatrix,
    bound: int, tol: ToleranceContext, what: str,
) -> Tuple[int, int]:
    frontier = minimal_pair_orders(B1, A1, B2, A2, X, bound, tol)
    if not frontier:
        raise InstanceRejected(f"{what}: no passing (m,n) <= {bound}")
    return min(frontier, key=lambda cell: (cell[0] + cell[1], cell[0]))


# Family builders

BuildResult = Tuple[Dict[str, CMatrix], Dict[str, int], Dict[str, str]]


def _build_jordan(spec: GenSpec, rng, tol) -> BuildResult:
    lam = complex(str(spec.param("lam", 1)))
    return {"A": jordan_block(lam, spec.dim)}, {}, {}


def _build_unitary(spec: GenSpec, rng, tol) -> BuildResult:
    return {"U": CMatrix(_unitary(rng, spec.dim))}, {}, {}


def _build_selfadjoint(spec: GenSpec, rng, tol) -> BuildResult:
    return {"H": CMatrix(_selfadjoint(rng, spec.dim))}, {}, {}


def _build_commuting(spec: GenSpec, rng, tol) -> BuildResult:
    count = spec.int_param("count", 3)
    if not 1 <= count <= MAX_COMMUTING:
        raise ConfigurationError(f"count must be in 1..{MAX_COMMUTING}, got {count}")
    arrays = _commuting_arrays(rng, spec.dim, count, bool(spec.int_param("nilpotent", 0)))
    return {f"C{i + 1}": CMatrix(a) for i, a in enumerate(arrays)}, {}, {}


def _nilpotent_perturbation(spec: GenSpec, rng, tol, kind: OrderKind) -> BuildResult:
    n = spec.int_param("n", 2)
    if not 1 <= n <= spec.dim:
        raise ConfigurationError(f"n must be in 1..dim={spec.dim}, got {n}")
    if 2 * n - 1 > 20:
        raise ConfigurationError(f"n={n} gives an order beyond the search bound")
    algebra = BlockAlgebra.split(spec.dim, n)
    lam = spec.param("lam")
    scalars = []
    for _ in range(algebra.blocks):
        if lam is not None:
            scalars.append(complex(str(lam)))
        elif kind is OrderKind.DELTA:
            scalars.append(rng.uniform(-1.5, 1.5))
        else:
            scalars.append(complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))))
    D = CMatrix(scipy.linalg.block_diag(*[s * np.eye(k) for s, k in zip(scalars, algebra.sizes)]))
    N = algebra.shift()
    A = D + N
    expected = 2 * n - 1
    found = minimal_order(kind, A.H, A, CMatrix.identity(spec.dim), min(20, expected + 2), tol)
    if found != expected:
        raise InstanceRejected(f"minimal order {found}, expected {expected}")
    return {"A": A, "D": D, "N": N}, {"n": n, "expected_order": expected}, {}


def _build_mr(spec, rng, tol) -> BuildResult:
    return _nilpotent_perturbation(spec, rng, tol, OrderKind.DELTA)


def _build_isonil(spec, rng, tol) -> BuildResult:
    return _nilpotent_perturbation(spec, rng, tol, OrderKind.TRIANGLE)


def _build_lemmas(spec: GenSpec, rng, tol) -> BuildResult:
    alg = _algebra(spec)
    bound = _bound(alg)
    first, second = _composite_kinds(rng, alg.blocks)
    B1, A1 = alg.pair(first, rng)
    B2, A2 = alg.pair(second, rng)
    BL, AL = alg.pair(["iso"] * alg.blocks, rng)
    BS, AS = alg.pair(["sym"] * alg.blocks, rng)
    X = alg.weight(rng, _weight_mode(spec))
    m, n = _pair_orders(B1, A1, B2, A2, X, bound, tol, "composite")
    orders = {
        "m": m,
        "n": n,
        "m0": _single_order(OrderKind.TRIANGLE, BL, AL, X, bound, tol, "BL,AL"),
        "n0": _single_order(OrderKind.DELTA, BS, AS, X, bound, tol, "BS,AS"),
    }
    matrices = {"B1": B1, "A1": A1, "B2": B2, "A2": A2, "BL": BL, "AL": AL, "BS": BS, "AS": AS, "X": X}
    return matrices, orders, {}


_PROP1_KINDS = {
    # combo: (first pair, second pair, (S,T)); None marks a composite choice
    "b": ("iso", "any", "any"),
    "a_and_e": (None, None, "sym"),
    "c_and_e": ("any", "sym", "sym"),
    "c": ("any", "sym", "any"),
    "a_and_d": (None, None, "iso"),
    "b_and_d": ("iso", "any", "iso"),
}


def _build_prop1(spec: GenSpec, rng, tol) -> BuildResult:
    combo = str(spec.param("combo", "b"))
    if combo not in PROP1_COMBOS:
        raise ConfigurationError(f"combo must be one of {', '.join(PROP1_COMBOS)}, got {combo!r}")
    alg = _algebra(spec)
    bound = _bound(alg)
    first_kind, second_kind, st_kind = _PROP1_KINDS[combo]
    if first_kind is None:
        first, second = _composite_kinds(rng, alg.blocks)
    else:
        first, second = [first_kind] * alg.blocks, [second_kind] * alg.blocks
    B1, A1 = alg.pair(first, rng)
    B2, A2 = alg.pair(second, rng)
    S, T = alg.pair([st_kind] * alg.blocks, rng)
    X = alg.weight(rng, _weight_mode(spec))

    m = n = t = 1
    letters = combo.split("_and_")
    if "a" in letters:
        m, n = _pair_orders(B1, A1, B2, A2, X, bound, tol, "(a)")
    if "b" in letters:
        m = _single_order(OrderKind.TRIANGLE, B1, A1, X, bound, tol, "(b)")
    if "c" in letters:
        n = _single_order(OrderKind.DELTA, B2, A2, X, bound, tol, "(c)")
    if "d" in letters:
        t = _single_order(OrderKind.TRIANGLE, S, T, X, bound, tol, "(d)")
    if "e" in letters:
        t = _single_order(OrderKind.DELTA, S, T, X, bound, tol, "(e)")

    part = "i" if combo in ("b", "a_and_e", "c_and_e") else "ii"
    matrices = {"B1": B1, "A1": A1, "B2": B2, "A2": A2, "S": S, "T": T, "X": X}
    return matrices, {"m": m, "n": n, "t": t}, {"combo": combo, "part": part}


def _build_cor01(spec: GenSpec, rng, tol) -> BuildResult:
    alg = _algebra(spec)
    bound = _bound(alg)
    a_scalars, b_scalars, a_active, b_active = [], [], [], []
    for _ in range(alg.blocks):
        if rng.integers(0, 2) == 0:
            a = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        else:
            a = _random_sign(rng) * rng.uniform(*SCALAR_MODULUS)
        scalar_a = rng.integers(0, 2) == 0
        a_scalars.append(a)
        b_scalars.append(_random_sign(rng))
        # nilpotent parts never sit on both factors of one block
        a_active.append(not scalar_a)
        b_active.append(scalar_a)
    A = alg.right(a_scalars, rng, a_active)
    B = alg.right(b_scalars, rng, b_active)
    identity = CMatrix.identity(spec.dim)
    m, n = _pair_orders(A.H, A, A.H, A, identity, bound, tol, "A isosymmetric")
    orders = {
        "m": m,
        "n": n,
        "r": _single_order(OrderKind.TRIANGLE, B.H, B, identity, bound, tol, "B isometric"),
        "s": _single_order(OrderKind.DELTA, B.H, B, identity, bound, tol, "B symmetric"),
    }
    return {"A": A, "B": B}, orders, {}


def _build_cor02(spec: GenSpec, rng, tol) -> BuildResult:
    alg = _algebra(spec)
    bound = _bound(alg)
    first, second = _composite_kinds(rng, alg.blocks)
    B1, A1 = alg.pair(first, rng)
    B2, A2 = alg.pair(second, rng)
    S1, T1 = alg.pair(["iso"] * alg.blocks, rng)
    S2, T2 = alg.pair(["sym"] * alg.blocks, rng)
    X = alg.weight(rng, _weight_mode(spec))
    m, n = _pair_orders(B1, A1, B2, A2, X, bound, tol, "composite")
    orders = {
        "m": m,
        "n": n,
        "r": _single_order(OrderKind.TRIANGLE, S1, T1, X, bound, tol, "S1,T1"),
        "s": _single_order(OrderKind.DELTA, S2, T2, X, bound, tol, "S2,T2"),
    }
    matrices = {"B1": B1, "A1": A1, "B2": B2, "A2": A2, "S1": S1, "T1": T1, "S2": S2, "T2": T2, "X": X}
    return matrices, orders, {}


def _tensor_mode(spec: GenSpec, rng, choices: Sequence[str]) -> str:
    if spec.dim > MAX_TENSOR_FACTOR_DIM:
        raise ConfigurationError(
            f"tensor families need dim <= {MAX_TENSOR_FACTOR_DIM}, got {spec.dim}"
        )
    mode = spec.param("mode")
    if mode is None:
        return choices[int(rng.integers(0, len(choices)))]
    if mode not in choices:
        raise ConfigurationError(f"mode must be one of {', '.join(choices)}, got {mode!r}")
    return str(mode)


def _build_cor03(spec: GenSpec, rng, tol) -> BuildResult:
    mode = _tensor_mode(spec, rng, ("iso", "sym"))
    alg = _algebra(spec)
    bound = _bound(alg)
    nb = alg.blocks
    first = "iso" if mode == "iso" else "any"
    second = "sym" if mode == "sym" else "any"
    E1, F1 = alg.pair([first] * nb, rng)
    E2, F2 = alg.pair([second] * nb, rng)
    P1, Q1 = alg.pair([first] * nb, rng)
    P2, Q2 = alg.pair([second] * nb, rng)
    X = alg.weight(rng, _weight_mode(spec))

    orders = {k: 1 for k in THEOREM1_ORDERS}
    if mode == "iso":
        me = _single_order(OrderKind.TRIANGLE, E1, F1, X, bound, tol, "E1,F1")
        rp = _single_order(OrderKind.TRIANGLE, P1, Q1, X, bound, tol, "P1,Q1")
        orders.update(m1=me, m2=me, r1=rp, r2=rp)
    else:
        ne = _single_order(OrderKind.DELTA, E2, F2, X, bound, tol, "E2,F2")
        sp = _single_order(OrderKind.DELTA, P2, Q2, X, bound, tol, "P2,Q2")
        orders.update(n1=ne, n2=ne, s1=sp, s2=sp)
    matrices = {
        "E1": E1, "F1": F1, "E2": E2, "F2": F2,
        "P1": P1, "Q1": Q1, "P2": P2, "Q2": Q2, "X": X,
    }
    return matrices, orders, {"mode": mode}


def _cor04_n(S: CMatrix, T: CMatrix, bound: int, tol: ToleranceContext) -> int:
    """Least n whose four stated and four tensor hypotheses all pass."""
    from .hypotheses import tensor_left, tensor_right

    identity = CMatrix.identity(S.dim)
    big = kron(identity, identity)
    for n in range(1, bound + 1):
        checks = [
            composite("", S.H, S, S.H, S, identity, n, n, tol),
            composite("", T.H, T, T.H, T, identity, n, n, tol),
            composite("", T.H, T, S.H, S, identity, n, n, tol),
            composite("", S.H, S, T.H, T, identity, n, n, tol),
            composite("", tensor_right(T.H), tensor_right(T), tensor_left(S.H), tensor_left(S), big, n, n, tol),
            composite("", tensor_left(S.H), tensor_left(S), tensor_right(T.H), tensor_right(T), big, n, n, tol),
        ]
        if all(c.passed for c in checks):
            return n
    raise InstanceRejected(f"no common order n <= {bound}")


def _build_cor04(spec: GenSpec, rng, tol) -> BuildResult:
    mode = _tensor_mode(spec, rng, ("iso", "sym", "both"))
    alg = _algebra(spec)
    kind = mode

    def scalars() -> List[complex]:
        values = []
        for _ in range(alg.blocks):
            if kind == "iso":
                values.append(complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))))
            else:
                values.append(pair_scalars(kind, rng)[1])
        return values

    S = alg.right(scalars(), rng)
    T = alg.right(scalars(), rng)
    n = _cor04_n(S, T, _bound(alg), tol)
    return {"S": S, "T": T}, {"n": n}, {"mode": mode}


def _build_cor05(spec: GenSpec, rng, tol) -> BuildResult:
    alg = _algebra(spec)
    bound = _bound(alg)
    scalars = []
    for _ in range(alg.blocks):
        if rng.integers(0, 2) == 0:
            scalars.append(complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))))
        else:
            scalars.append(_random_sign(rng) * rng.uniform(*SCALAR_MODULUS))
    A = alg.right(scalars, rng)
    exponent = int(rng.integers(1, max(alg.sizes) + 1))
    N = CMatrix(_random_complex(rng, *NILPOTENT_COEFF) * np.linalg.matrix_power(alg.shift().data, exponent))
    X = alg.weight(rng, _weight_mode(spec))
    m, n = _pair_orders(A.H, A, A.H, A, X, bound, tol, "A isosymmetric")
    n1 = nilpotency_index(N, tol)
    if n1 is None:
        raise InstanceRejected("N is not nilpotent within tolerance")
    return {"A": A, "N": N, "X": X}, {"m": m, "n": n, "n1": n1}, {}


def _build_thm1(spec: GenSpec, rng, tol) -> BuildResult:
    alg = _algebra(spec)
    bound = _bound(alg)
    first, second = _composite_kinds(rng, alg.blocks)
    B1, A1 = alg.pair(first, rng)
    S1, T1 = alg.pair(first, rng)
    B2, A2 = alg.pair(second, rng)
    S2, T2 = alg.pair(second, rng)
    X = alg.weight(rng, _weight_mode(spec))
    m1, n1 = _pair_orders(B1, A1, B2, A2, X, bound, tol, "(ii)")
    r1, n2 = _pair_orders(S1, T1, B2, A2, X, bound, tol, "(iii)")
    m2, s1 = _pair_orders(B1, A1, S2, T2, X, bound, tol, "(iv)")
    r2, s2 = _pair_orders(S1, T1, S2, T2, X, bound, tol, "(v)")
    orders = dict(m1=m1, n1=n1, r1=r1, n2=n2, m2=m2, s1=s1, r2=r2, s2=s2)
    matrices = {"B1": B1, "A1": A1, "B2": B2, "A2": A2, "S1": S1, "T1": T1, "S2": S2, "T2": T2, "X": X}
    return matrices, orders, {}


def _nilpotent_power(alg: BlockAlgebra, rng, adjoint: bool) -> CMatrix:
    exponent = int(rng.integers(1, max(alg.sizes) + 1))
    P = _random_complex(rng, *NILPOTENT_COEFF) * np.linalg.matrix_power(alg.shift().data, exponent)
    return CMatrix(P.T if adjoint else P)


def _thm2_base(alg: BlockAlgebra, rng, kinds: Sequence[str]) -> Tuple[CMatrix, CMatrix]:
    """Left base blockwise scalar, right base a*I + alpha*N^ceil(K/2) so orders stay <= 2."""
    scalars = [pair_scalars(kind, rng) for kind in kinds]
    B = CMatrix(scipy.linalg.block_diag(*[b * np.eye(k) for (b, _), k in zip(scalars, alg.sizes)]))
    half = (max(alg.sizes) + 1) // 2
    shift_power = np.linalg.matrix_power(alg.shift().data, half)
    right = scipy.linalg.block_diag(*[a * np.eye(k) for (_, a), k in zip(scalars, alg.sizes)])
    A = CMatrix(right + _random_complex(rng, *NILPOTENT_COEFF) * shift_power)
    return B, A


def _build_thm2(spec: GenSpec, rng, tol) -> BuildResult:
    variant = str(spec.param("variant", "full"))
    if variant not in ("full", "partial"):
        raise ConfigurationError(f"variant must be 'full' or 'partial', got {variant!r}")
    if variant == "partial":
        return _build_thm2_partial(spec, rng, tol)
    alg = BlockAlgebra.split(spec.dim, max(1, spec.int_param("block", 2)))
    bound = _bound(alg)
    X = alg.weight(rng, _weight_mode(spec))

    first, second = _composite_kinds(rng, alg.blocks)
    B1, A1 = _thm2_base(alg, rng, first)
    B2, A2 = _thm2_base(alg, rng, second)
    M1, M2 = _nilpotent_power(alg, rng, False), _nilpotent_power(alg, rng, False)
    N1, N2 = _nilpotent_power(alg, rng, True), _nilpotent_power(alg, rng, True)
    m, n = _pair_orders(B1, A1, B2, A2, X, bound, tol, "(iii)")
    matrices = {
        "B1": B1, "A1": A1, "B2": B2, "A2": A2,
        "M1": M1, "N1": N1, "M2": M2, "N2": N2, "X": X,
    }
    return matrices, _thm2_orders(matrices, m, n, tol), {"variant": variant}


def _thm2_orders(matrices: Dict[str, CMatrix], m: int, n: int, tol: ToleranceContext) -> Dict[str, int]:
    orders = {"m": m, "n": n}
    for name, key in (("m1", "M1"), ("n1", "N1"), ("m2", "M2"), ("n2", "N2")):
        index = nilpotency_index(matrices[key], tol)
        if index is None:
            raise InstanceRejected(f"{name}: perturbation is not nilpotent within tolerance")
        orders[name] = index
    return orders


def _build_thm2_partial(spec: GenSpec, rng, tol) -> BuildResult:
    """
    Two pairs that need each other: the space splits into a top and a bottom
    half, the triangle pair is nilpotent on the top half only and the delta
    pair on the bottom half only. Pair 2 is conjugated by a unitary per half,
    so the cross commutators are nonzero while each pair still commutes with
    its own perturbations.
    """
    d = spec.dim
    if d < 2:
        raise ConfigurationError("the partial variant needs dim >= 2")
    block = max(1, spec.int_param("block", 2))
    top = BlockAlgebra.split(d - d // 2, block)
    bottom = BlockAlgebra.split(d // 2, block)
    halves = (top, bottom)

    def stacked(parts) -> CMatrix:
        return CMatrix(scipy.linalg.block_diag(*[P.data for P in parts]))

    B1t, A1t = _thm2_base(top, rng, ["iso"] * top.blocks)
    B1b, A1b = _thm2_base(bottom, rng, ["any"] * bottom.blocks)
    B2t, A2t = _thm2_base(top, rng, ["any"] * top.blocks)
    B2b, A2b = _thm2_base(bottom, rng, ["sym"] * bottom.blocks)
    Xt, Xb = top.weight(rng, _weight_mode(spec)), bottom.weight(rng, _weight_mode(spec))
    B1, A1, X = stacked([B1t, B1b]), stacked([A1t, A1b]), stacked([Xt, Xb])
    B2, A2 = stacked([B2t, B2b]), stacked([A2t, A2b])
    M1 = stacked([_nilpotent_power(h, rng, False) for h in halves])
    N1 = stacked([_nilpotent_power(h, rng, True) for h in halves])
    M2 = stacked([_nilpotent_power(h, rng, False) for h in halves])
    N2 = stacked([_nilpotent_power(h, rng, True) for h in halves])
    V = CMatrix(scipy.linalg.block_diag(_unitary(rng, top.dim), _unitary(rng, bottom.dim)))
    B2, A2, M2, N2 = (V @ P @ V.H for P in (B2, A2, M2, N2))

    bound = max(_bound(top), _bound(bottom))
    m = _single_order(OrderKind.TRIANGLE, B1t, A1t, Xt, bound, tol, "triangle pair on the top half")
    # n must kill every bottom input, not only the image of X
    generic = CMatrix(scipy.linalg.block_diag(np.zeros((top.dim, top.dim)), _gaussian(rng, bottom.dim)))
    n = _single_order(OrderKind.DELTA, B2, A2, generic, bound, tol, "delta pair on the bottom half")

    if order_residual(OrderKind.TRIANGLE, B1, A1, X, m, tol).verdict:
        raise InstanceRejected("triangle pair vanishes on X by itself")
    if order_residual(OrderKind.DELTA, B2, A2, X, n, tol).verdict:
        raise InstanceRejected("delta pair vanishes on X by itself")

    matrices = {
        "B1": B1, "A1": A1, "B2": B2, "A2": A2,
        "M1": M1, "N1": N1, "M2": M2, "N2": N2, "X": X,
    }
    return matrices, _thm2_orders(matrices, m, n, tol), {"variant": "partial"}


def _signature(d: int) -> np.ndarray:
    return np.diag([1.0 if i % 2 == 0 else -1.0 for i in range(d)])


def _build_thm3(spec: GenSpec, rng, tol) -> BuildResult:
    d = spec.dim
    p = spec.int_param("p", 1)
    m, n = spec.int_param("m", 1), spec.int_param("n", 1)
    mode = str(spec.param("mode", "default"))
    if not 1 <= p <= d:
        raise ConfigurationError(f"p must be in 1..dim={d}, got {p}")
    if m < 1 or n < 1:
        raise ConfigurationError(f"orders must be positive, got m={m}, n={n}")
    if mode not in ("default", "strict"):
        raise ConfigurationError(f"mode must be 'default' or 'strict', got {mode!r}")
    d1 = d - p
    if mode == "strict" and d1 < 2:
        raise ConfigurationError("strict mode needs a core of dimension >= 2")

    blocks_T, blocks_X = [], []
    if d1 > 0:
        if mode == "strict":
            signature = _signature(d1 - 2)
            blocks_T.append(jordan_block(1, 2).data)
            blocks_X.append(np.eye(2))
        else:
            signature = _signature(d1)
        if signature.size:
            blocks_T.append(signature)
            blocks_X.append(_signature_weight(rng, np.diag(signature), spec))
    blocks_T.append(np.eye(p, k=1))
    x22 = np.eye(p) if p == 1 or n >= 2 * p - 1 else np.zeros((p, p))
    blocks_X.append(x22)

    core = scipy.linalg.block_diag(*blocks_T)
    weight = scipy.linalg.block_diag(*blocks_X)
    if spec.int_param("rotate", 0):
        U = _unitary(rng, d)
        core = U @ core @ U.conj().T
        weight = U @ weight @ U.conj().T
    labels = {"mode": mode, "core_dim": str(d1)}
    return {"A": CMatrix(core), "X": CMatrix(weight)}, {"m": m, "n": n, "p": p}, labels


def _signature_weight(rng, signs: np.ndarray, spec: GenSpec) -> np.ndarray:
    """X11 commuting with the signature: identity, or random within each sign class."""
    if spec.param("x", "identity") != "random":
        return np.eye(len(signs))
    W = np.zeros((len(signs), len(signs)), dtype=np.complex128)
    for sign in (1.0, -1.0):
        idx = np.flatnonzero(signs == sign)
        if idx.size:
            W[np.ix_(idx, idx)] = _gaussian(rng, idx.size)
    return W


BUILDERS: Dict[GeneratorFamily, Callable[[GenSpec, np.random.Generator, ToleranceContext], BuildResult]] = {
    GeneratorFamily.JORDAN: _build_jordan,
    GeneratorFamily.UNITARY: _build_unitary,
    GeneratorFamily.SELFADJOINT: _build_selfadjoint,
    GeneratorFamily.COMMUTING: _build_commuting,
    GeneratorFamily.MR: _build_mr,
    GeneratorFamily.ISONIL: _build_isonil,
    GeneratorFamily.LEMMAS: _build_lemmas,
    GeneratorFamily.PROP1: _build_prop1,
    GeneratorFamily.COR01: _build_cor01,
    GeneratorFamily.COR02: _build_cor02,
    GeneratorFamily.COR03: _build_cor03,
    GeneratorFamily.COR04: _build_cor04,
    GeneratorFamily.COR05: _build_cor05,
    GeneratorFamily.THM1: _build_thm1,
    GeneratorFamily.THM2: _build_thm2,
    GeneratorFamily.THM3: _build_thm3,
}


def generate(spec: GenSpec, tol: Optional[ToleranceContext] = None) -> InstanceBundle:
    """
    Build and certify an instance bundle.

    Parameters:
        spec (GenSpec): Family, seed, dim and params.
        tol (Optional[ToleranceContext]): Certification tolerance.

    Returns:
        InstanceBundle: Matrices, orders and the passed hypothesis residuals.

    Raises:
        ConfigurationError: If the params are invalid for the family.
        GenerationFailedError: If no attempt passes certification.

    Examples:
        >>> bundle = generate(GenSpec(seed=0, dim=2, family="mr", params={"n": 2}))
        >>> bundle.order("expected_order")
        3
    """
    from ..config import get_settings

    tol = resolve_tolerance(tol)
    retries = get_settings().generation_retries
    build = BUILDERS[spec.family]
    checklist = CHECKLISTS[spec.family.value]

    for attempt in range(retries):
        rng = make_rng(spec.seed, attempt)
        try:
            matrices, orders, labels = build(spec, rng, tol)
        except InstanceRejected as exc:
            logger.warning("%s seed=%d attempt %d rejected: %s", spec.family.value, spec.seed, attempt, exc)
            continue
        bundle = InstanceBundle(spec=spec, matrices=matrices, orders=orders, labels=labels, attempt=attempt)
        if spec.family is GeneratorFamily.THM3:
            bundle.decomposition = core_nilpotent(bundle["A"], tol)
        bundle.hypotheses = checklist(bundle, tol)
        if bundle.certified():
            logger.debug("%s seed=%d certified at attempt %d", spec.family.value, spec.seed, attempt)
            return bundle
        failed = [h.label for h in bundle.hypotheses if not h.passed]
        logger.warning(
            "%s seed=%d attempt %d failed certification: %s",
            spec.family.value, spec.seed, attempt, ", ".join(failed),
        )

    raise GenerationFailedError(
        f"{spec.family.value} (seed {spec.seed}, dim {spec.dim}) not certified after {retries} attempts"
    )


def mr_symmetric_instance(spec: GenSpec, tol: Optional[ToleranceContext] = None) -> Tuple[CMatrix, int]:
    """(A + N, 2n - 1) with A real blockwise-scalar and N an n-nilpotent commuting with A."""
    bundle = generate(spec.model_copy(update={"family": GeneratorFamily.MR}), tol)
    return bundle["A"], bundle.order("expected_order")


def isometry_plus_nilpotent_instance(
    spec: GenSpec, tol: Optional[ToleranceContext] = None
) -> Tuple[CMatrix, int]:
    """(U + N, 2n - 1) with U blockwise-scalar unitary and N a commuting n-nilpotent."""
    bundle = generate(spec.model_copy(update={"family": GeneratorFamily.ISONIL}), tol)
    return bundle["A"], bundle.order("expected_order")


def theorem1_instance(spec: GenSpec, tol: Optional[ToleranceContext] = None) -> InstanceBundle:
    return generate(spec.model_copy(update={"family": GeneratorFamily.THM1}), tol)


def theorem2_instance(spec: GenSpec, tol: Optional[ToleranceContext] = None) -> InstanceBundle:
    return generate(spec.model_copy(update={"family": GeneratorFamily.THM2}), tol)


def theorem3_instance(spec: GenSpec, tol: Optional[ToleranceContext] = None) -> InstanceBundle:
    return generate(spec.model_copy(update={"family": GeneratorFamily.THM3}), tol)
