"""
工具函数模块 - 验证器
"""
# --seed 为 64 位无符号整数
SEED_LIMIT = 2 ** 64


def is_valid_dimension(value, minimum: int = 1) -> bool:
    """
    验证矩阵尺寸

    Args:
        value: 待验证的值
        minimum: 允许的最小值

    Returns:
        是否为不小于 minimum 的整数（bool 不算）
    """
    return isinstance(value, int) and not isinstance(value, bool) and value >= minimum

