"""Seeded random Lie algebras, complex structures and pairs for property sweeps.

Random algebras are isomorphic copies (random integer change of basis) of a
pool of known algebras, plus random semidirect products R x_D R^3. Pairs
``(g, J)`` with special J are transported along the same change of basis,
so abelian and bi-invariant instances appear alongside generic ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complex_structure import LinearComplexStructure, conjugate_structure, random_complex_structure
from .lie_algebra import (
    LieAlgebra,
    change_basis,
    direct_sum,
    random_invertible_integer_matrix,
    random_semidirect,
)


@dataclass(frozen=True)
class SamplingConfig:
    dim: int = 4
    basis_bound: int = 1
    derivation_bound: int = 2


def _aff_r() -> LieAlgebra:
    return LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})


def _h3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}})


def _so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})


def _sl2() -> LieAlgebra:
    # [h, e] = 2e, [h, f] = -2f, [e, f] = h
    return LieAlgebra.from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


def _kt4() -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}})


def _aff_c() -> LieAlgebra:
    return LieAlgebra.from_brackets(4, {(0, 2): {2: 1}, (0, 3): {3: 1}, (1, 2): {3: 1}, (1, 3): {2: -1}})


def _n4() -> LieAlgebra:
    """Filiform: [e1,e2]=e3, [e1,e3]=e4."""
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}, (0, 2): {3: 1}})


def _three_step() -> LieAlgebra:
    """R x h3 with e4 acting as diag(1, 1, 2); derived algebra h3 is not abelian."""
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}, (0, 3): {0: -1}, (1, 3): {1: -1}, (2, 3): {2: -2}})


# (name, algebra, special J pairs or None, kind of J)
def special_pairs() -> list[tuple[str, LieAlgebra, LinearComplexStructure | None, str]]:
    pairs = [(0, 1), (2, 3)]
    out = [
        ("kt4", _kt4(), LinearComplexStructure.from_pairs(4, pairs), "abelian"),
        ("aff_c", _aff_c(), LinearComplexStructure.from_pairs(4, pairs), "bi_invariant"),
        ("r2r2", direct_sum(_aff_r(), _aff_r()), LinearComplexStructure.from_pairs(4, pairs), "abelian"),
        ("abelian4", LieAlgebra.abelian(4), LinearComplexStructure.standard(2), "both"),
        ("n4", _n4(), None, ""),
        ("three_step", _three_step(), None, ""),
        ("so3+R", direct_sum(_so3(), LieAlgebra.abelian(1)), None, ""),
        ("sl2+R", direct_sum(_sl2(), LieAlgebra.abelian(1)), None, ""),
        ("h3+R", direct_sum(_h3(), LieAlgebra.abelian(1)), None, ""),
    ]
    return out


def pool(dim: int) -> list[LieAlgebra]:
    if dim == 2:
        return [LieAlgebra.abelian(2), _aff_r()]
    if dim == 4:
        return [g for _, g, _, _ in special_pairs()]
    if dim == 6:
        return [
            direct_sum(_kt4(), _aff_r()),
            direct_sum(_aff_c(), LieAlgebra.abelian(2)),
            direct_sum(_h3(), _h3()),
            direct_sum(_so3(), _so3()),
            direct_sum(_three_step(), _aff_r()),
        ]
    raise ValueError(f"no pool for dimension {dim}")


def random_lie_algebra(seed: int, config: SamplingConfig = SamplingConfig()) -> LieAlgebra:
    rng = random.Random(seed)
    choices = pool(config.dim)
    if rng.random() < 0.25:
        g = random_semidirect(rng, config.dim, config.derivation_bound)
    else:
        g = rng.choice(choices)
    p = random_invertible_integer_matrix(rng, config.dim, config.basis_bound)
    return change_basis(g, p)


def random_pair(seed: int, config: SamplingConfig = SamplingConfig()):
    """A random ``(g, J)`` in dimension 4; about half carry a transported special J."""
    rng = random.Random(seed)
    name, g, J, kind = rng.choice(special_pairs())
    if rng.random() < 0.3:
        g = random_semidirect(rng, 4, config.derivation_bound)
        J = None
    p = random_invertible_integer_matrix(rng, 4, config.basis_bound)
    g2 = change_basis(g, p)
    if J is not None and rng.random() < 0.6:
        return g2, conjugate_structure(J, p)
    return g2, random_complex_structure(4, rng.randrange(1 << 30))
