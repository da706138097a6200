"""
FilePath: /lie_quotient_rep/src/algebra/families.py
Description:
    常用李代数族（目录文件与测试共用）
"""

from typing import Dict, Tuple

from src.algebra.liealg import LieAlgebra

Table = Dict[Tuple[int, int], Dict[int, int]]


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_table(f"abelian{n}", n, {})


def heisenberg(n: int = 1) -> LieAlgebra:
    """
    维数 2n+1：[x_i, y_i] = z

    n = 1 时基为 x, y, z。
    """
    if n < 1:
        raise ValueError(f"heisenberg rank must be >= 1, got {n}")
    dim = 2 * n + 1
    z = dim - 1
    table: Table = {(i, n + i): {z: 1} for i in range(n)}
    if n == 1:
        labels = ["x", "y", "z"]
    else:
        labels = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"]
    return LieAlgebra.from_table(f"heisenberg{dim}", dim, table, labels)


def standard_filiform(d: int) -> LieAlgebra:
    """[e1, e_i] = e_{i+1}，2 ≤ i ≤ d-1；类为 d-1"""
    if d < 2:
        raise ValueError(f"filiform dimension must be >= 2, got {d}")
    table: Table = {(0, i): {i + 1: 1} for i in range(1, d - 1)}
    return LieAlgebra.from_table(
        f"filiform{d}", d, table, [f"e{k + 1}" for k in range(d)]
    )


def sl2() -> LieAlgebra:
    """[h, e] = 2e, [h, f] = -2f, [e, f] = h"""
    table: Table = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}
    return LieAlgebra.from_table("sl2", 3, table, ["h", "e", "f"])


def two_dim_solvable() -> LieAlgebra:
    """⟨δ⟩ ⋉ ⟨x⟩，[δ, x] = x"""
    return LieAlgebra.from_table("solvable2", 2, {(0, 1): {1: 1}}, ["d", "x"])


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str = "") -> LieAlgebra:
    offset = a.dim
    table: Dict[Tuple[int, int], Dict[int, object]] = {}
    for (i, j), terms in a.brackets.items():
        table[(i, j)] = dict(terms)
    for (i, j), terms in b.brackets.items():
        table[(i + offset, j + offset)] = {k + offset: c for k, c in terms}
    labels = list(a.basis_labels) + list(b.basis_labels)
    if len(set(labels)) != len(labels):
        labels = [f"{label}_1" for label in a.basis_labels] + [f"{label}_2" for label in b.basis_labels]
    return LieAlgebra.from_table(name or f"{a.name}+{b.name}", a.dim + b.dim, table, labels)


def semidirect_h3_example() -> LieAlgebra:
    """
    5 维可解代数 a ⊕ (⟨d⟩ ⋉ h3)

    基 a, d, x, y, z：[d, x] = x, [d, z] = z, [x, y] = z；
    p = span{a, d}，m = h3，p 在 m 上作用的核为 span{a}。
    """
    table: Table = {(1, 2): {2: 1}, (1, 4): {4: 1}, (2, 3): {4: 1}}
    return LieAlgebra.from_table("semidirect5", 5, table, ["a", "d", "x", "y", "z"])
