"""
带种子的随机生成器

所有生成器都是 (参数, 种子) 的纯函数：seed 可以是整数或 numpy Generator，
逐次试验的子种子由 trial_rng(master, index) 派生，不使用全局随机状态。
"""
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import qr

from src.canonical.form import CanonicalForm, feasible_multiplicities
from src.linmap import LinMap
from src.matcore import Field, Mat, ParameterError, max_norm

# Q 与奇异值权重的对数均匀区间
LOG_UNIFORM_LOW = 0.1
LOG_UNIFORM_HIGH = 10.0


def trial_rng(master: int, index: int) -> np.random.Generator:
    """(master, 试验序号) 唯一决定的随机源。"""
    return np.random.default_rng(np.random.SeedSequence([int(master), int(index)]))


def as_generator(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(0 if seed is None else int(seed))


def log_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    return np.exp(rng.uniform(math.log(LOG_UNIFORM_LOW), math.log(LOG_UNIFORM_HIGH), size))


def _gaussian(rng: np.random.Generator, shape, field: Field) -> Mat:
    if field is Field.COMPLEX:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    return rng.standard_normal(shape)


def random_unitary(d: int, field=Field.REAL, seed=None) -> Mat:
    """
    Haar 分布的 d×d 酉矩阵（实数域为正交矩阵）

    Gaussian 矩阵做 QR 分解后，用 R 对角元的相位（实情形为符号）修正 Q 的各列。
    """
    if int(d) != d or d < 1:
        raise ParameterError(f"Unitary dimension must be a positive integer: {d}")
    field = Field.parse(field)
    rng = as_generator(seed)
    q, r = qr(_gaussian(rng, (d, d), field))
    diagonal = np.diag(r)
    phases = diagonal / np.abs(diagonal)
    return np.asarray(q * phases, dtype=field.dtype)


def random_matrix(m: int, n: int, field=Field.REAL, seed=None) -> Mat:
    """标准 Gaussian 矩阵，一般为满秩。"""
    return np.asarray(_gaussian(as_generator(seed), (m, n), Field.parse(field)))


def random_canonical(m, n, r, s, field=Field.REAL, q1=1, q2=0, seed=None) -> CanonicalForm:
    """Haar 的 U、V，Q 元素在 [0.1, 10] 上对数均匀并降序排列。"""
    field = Field.parse(field)
    if (q1, q2) not in feasible_multiplicities(m, n, r, s):
        raise ParameterError(
            f"Infeasible multiplicities q1={q1}, q2={q2} for M_{m},{n} -> M_{r},{s}"
        )
    rng = as_generator(seed)
    U = random_unitary(r, field, rng)
    V = random_unitary(s, field, rng)
    Q1 = sorted(log_uniform(rng, q1).tolist(), reverse=True)
    Q2 = sorted(log_uniform(rng, q2).tolist(), reverse=True)
    return CanonicalForm(
        U=U, V=V, Q1=tuple(Q1), Q2=tuple(Q2), m=m, n=n, r=r, s=s, field=field
    ).validate()


def disjoint_pair_from_frame(
    U: Mat,
    V: Mat,
    first: Sequence[int],
    second: Sequence[int],
    first_weights: Sequence[float],
    second_weights: Sequence[float],
) -> Tuple[Mat, Mat]:
    """U·D₁·V 与 U·D₂·V，D₁、D₂ 的对角支撑互不相交。"""
    m, n = U.shape[0], V.shape[0]
    if set(first) & set(second):
        raise ParameterError("Supports of a disjoint pair must not overlap")
    dtype = np.result_type(U, V)
    D1 = np.zeros((m, n), dtype=dtype)
    D2 = np.zeros((m, n), dtype=dtype)
    for index, weight in zip(first, first_weights):
        D1[index, index] = weight
    for index, weight in zip(second, second_weights):
        D2[index, index] = weight
    return U @ D1 @ V, U @ D2 @ V


def _draw_supports(rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
    order = rng.permutation(size)
    # 一半概率取单点支撑，对应秩一情形
    if size == 2 or rng.random() < 0.5:
        return order[:1], order[1:2]
    cut = int(rng.integers(1, size))
    stop = int(rng.integers(cut + 1, size + 1))
    return order[:cut], order[cut:stop]


def _check_domain(m: int, n: int) -> None:
    if m < 2 or n < 2:
        raise ParameterError(f"Disjoint pairs need m, n >= 2: got {m}x{n}")


def random_disjoint_pair(m: int, n: int, field=Field.REAL, seed=None) -> Tuple[Mat, Mat]:
    _check_domain(m, n)
    field = Field.parse(field)
    rng = as_generator(seed)
    U = random_unitary(m, field, rng)
    V = random_unitary(n, field, rng)
    first, second = _draw_supports(rng, min(m, n))
    return disjoint_pair_from_frame(
        U, V, first, second, log_uniform(rng, len(first)), log_uniform(rng, len(second))
    )


def random_rank_one_pair(m: int, n: int, field=Field.REAL, seed=None) -> Tuple[Mat, Mat]:
    """共享随机奇异向量框架的一对不交秩一部分等距。"""
    _check_domain(m, n)
    field = Field.parse(field)
    rng = as_generator(seed)
    U = random_unitary(m, field, rng)
    V = random_unitary(n, field, rng)
    return disjoint_pair_from_frame(U, V, [0], [1], [1.0], [1.0])


def random_partial_isometry(m: int, n: int, rank: int, field=Field.REAL, seed=None) -> Mat:
    if int(rank) != rank or not 0 <= rank <= min(m, n):
        raise ParameterError(f"Rank must lie in [0, {min(m, n)}]: {rank}")
    field = Field.parse(field)
    rng = as_generator(seed)
    U = random_unitary(m, field, rng)
    V = random_unitary(n, field, rng)
    middle = np.zeros((m, n), dtype=field.dtype)
    middle[range(int(rank)), range(int(rank))] = 1
    return U @ middle @ V


def random_rank_le2(m: int, n: int, field=Field.REAL, seed=None) -> Mat:
    """
    σ₁u₁v₁* + σ₂u₂v₂*，σ 在 [0.1, 10] 上对数均匀

    四分之一概率只取秩一项；m 或 n 为 1 时总是秩一。
    """
    field = Field.parse(field)
    rng = as_generator(seed)
    U = random_unitary(m, field, rng)
    V = random_unitary(n, field, rng)
    rank = 1 if min(m, n) == 1 or rng.random() < 0.25 else 2
    sigma = log_uniform(rng, rank)
    return (U[:, :rank] * sigma) @ V[:rank, :]


def random_zero_triple(m: int, n: int, field=Field.REAL, seed=None) -> Tuple[Mat, Mat, Mat]:
    """
    Jordan 三元积为零的 (A, B, C)

    A、C 支撑在 S₁ 上，B 支撑在与之不交的 S₂ 上；一半概率取 C = A。
    """
    _check_domain(m, n)
    field = Field.parse(field)
    rng = as_generator(seed)
    U = random_unitary(m, field, rng)
    V = random_unitary(n, field, rng)
    first, second = _draw_supports(rng, min(m, n))
    A, B = disjoint_pair_from_frame(
        U, V, first, second, log_uniform(rng, len(first)), log_uniform(rng, len(second))
    )
    if rng.random() < 0.5:
        return A, B, A
    C, _ = disjoint_pair_from_frame(U, V, first, [], log_uniform(rng, len(first)), [])
    return A, B, C


def perturb(phi: LinMap, epsilon: float, seed=None) -> LinMap:
    """在均匀选取的一个基像上加 epsilon·(max-norm 为 1 的随机矩阵)。"""
    if epsilon < 0:
        raise ParameterError(f"Perturbation size must be non-negative: {epsilon}")
    rng = as_generator(seed)
    index = int(rng.integers(phi.m * phi.n))
    noise = _gaussian(rng, (phi.r, phi.s), phi.field)
    noise = noise / max_norm(noise)
    images = phi.images
    images[index] = images[index] + epsilon * noise
    return LinMap(phi.m, phi.n, phi.r, phi.s, phi.field, np.stack(images).reshape(phi.m, phi.n, phi.r, phi.s))


def random_dimensions(rng: np.random.Generator, max_dim: int, q_max: int = 3, slack: int = 2) -> dict:
    """
    抽取一组可行的 (m, n, r, s, q1, q2)

    r、s 取满足维数约束的最小值再加上 [0, slack] 的余量。
    """
    if max_dim < 2:
        raise ParameterError(f"max_dim must be at least 2: {max_dim}")
    m = int(rng.integers(2, max_dim + 1))
    n = int(rng.integers(2, max_dim + 1))
    choices = [(a, b) for a in range(q_max + 1) for b in range(q_max + 1) if 1 <= a + b <= q_max]
    q1, q2 = choices[int(rng.integers(len(choices)))]
    r = q1 * m + q2 * n + int(rng.integers(0, slack + 1))
    s = q1 * n + q2 * m + int(rng.integers(0, slack + 1))
    return {"m": m, "n": n, "r": r, "s": s, "q1": q1, "q2": q2}


def random_field(rng: np.random.Generator, fields: Optional[Sequence[Field]] = None) -> Field:
    fields = list(fields or (Field.REAL, Field.COMPLEX))
    return fields[int(rng.integers(len(fields)))]
