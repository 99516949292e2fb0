"""g-frame families, the g-frame operator and optimal g-frame bounds."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance, alg_norm, involution
from .errors import DimensionMismatch
from .hmodule import ModuleVector, inner, module_norm
from .operators import AdjointableOperator, compose, op_adjoint, op_sum, spectral_bounds, vstack


@dataclass(frozen=True, eq=False)
class GFrameFamily:
    members: tuple

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise DimensionMismatch("a family needs at least one member")
        k, n = members[0].k, members[0].n_in
        for j, op in enumerate(members):
            if op.k != k or op.n_in != n:
                raise DimensionMismatch(
                    f"member {j} maps A^{op.n_in} over M_{op.k}, expected A^{n} over M_{k}"
                )
        object.__setattr__(self, "members", members)

    @property
    def k(self) -> int:
        return self.members[0].k

    @property
    def n(self) -> int:
        return self.members[0].n_in

    @property
    def J(self) -> int:
        return len(self.members)

    @property
    def dims(self) -> list[int]:
        return [op.n_out for op in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __sub__(self, other: "GFrameFamily") -> "GFrameFamily":
        check_compatible(self, other)
        return GFrameFamily(tuple(a - b for a, b in zip(self.members, other.members)))

    def scaled(self, s: complex) -> "GFrameFamily":
        return GFrameFamily(tuple(s * op for op in self.members))

    def stacked(self) -> AdjointableOperator:
        """f -> (Lambda_1 f, ..., Lambda_J f) as a single operator A^n -> A^{sum d_j}."""
        return vstack(self.members)


def check_compatible(a: GFrameFamily, b: GFrameFamily):
    if (a.k, a.n, a.dims) != (b.k, b.n, b.dims):
        raise DimensionMismatch(
            f"families differ: (k={a.k}, n={a.n}, dims={a.dims}) vs (k={b.k}, n={b.n}, dims={b.dims})"
        )


def gframe_operator(F: GFrameFamily) -> AdjointableOperator:
    return op_sum([compose(op_adjoint(L), L) for L in F.members])


def cross_operator(G: GFrameFamily, F: GFrameFamily) -> AdjointableOperator:
    """sum_j G_j^* F_j."""
    check_compatible(G, F)
    return op_sum([compose(op_adjoint(g), f) for g, f in zip(G.members, F.members)])


def gframe_bounds(F: GFrameFamily, tol: Tolerance = DEFAULT_TOL) -> Optional[tuple[float, float]]:
    s = spectral_bounds(gframe_operator(F), tol)
    if s.lambda_min is None or s.lambda_min <= tol.inv_tol:
        return None
    return s.lambda_min, s.lambda_max


def random_module_vector(rng: np.random.Generator, k: int, n: int) -> ModuleVector:
    shape = (n, k, k)
    return ModuleVector(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample_norm_condition(
    form: Callable[[ModuleVector], np.ndarray],
    k: int,
    n: int,
    A: float,
    B: float,
    samples: int,
    seed,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Falsifier for A||f||^2 <= ||form(f)|| <= B||f||^2 on seeded random f."""
    if A > B:
        raise ValueError(f"need A <= B, got A={A}, B={B}")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        f = random_module_vector(rng, k, n)
        nf2 = module_norm(f) ** 2
        if nf2 == 0.0:
            continue
        q = alg_norm(form(f))
        slack = tol.eq_tol * max(1.0, B * nf2)
        if q < A * nf2 - slack or q > B * nf2 + slack:
            return False
    return True


def check_norm_condition(
    F: GFrameFamily, A: float, B: float, samples: int, seed, tol: Tolerance = DEFAULT_TOL
) -> bool:
    S = gframe_operator(F)
    return sample_norm_condition(lambda f: inner(S(f), f), F.k, F.n, A, B, samples, seed, tol)


def rank_one_family(vectors: Sequence[ModuleVector]) -> GFrameFamily:
    """Vector frame {f_j} as the g-frame Lambda_j f = <f, f_j> in A^1."""
    vectors = list(vectors)
    if not vectors:
        raise DimensionMismatch("need at least one vector")
    shape = vectors[0].components.shape
    members = []
    for v in vectors:
        if v.components.shape != shape:
            raise DimensionMismatch("all vectors must share (n, k)")
        # <f, v> = sum_i f_i v_i^*  ->  coefficient c_{0i} = v_i^*
        c = np.stack([involution(vi) for vi in v.components])[None]
        members.append(AdjointableOperator(c))
    return GFrameFamily(tuple(members))
