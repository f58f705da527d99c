"""
格式化工具函数
"""
import re
from typing import Iterable, Optional


def format_residual(value: Optional[float]) -> str:
    """
    格式化残差

    Args:
        value: 非负实数，None 表示未计算

    Returns:
        科学计数法字符串，如 "1.23e-10"
    """
    if value is None:
        return "n/a"
    return f"{float(value):.2e}"


def format_multiset(values: Iterable[float], digits: int = 6) -> str:
    """
    格式化 Q 的对角元

    Args:
        values: 实数序列
        digits: 有效数字

    Returns:
        如 "[0.8, 0.3]"，空序列为 "[]"
    """
    return "[" + ", ".join(f"{float(v):.{digits}g}" for v in values) + "]"


def format_signature(m: int, n: int, r: int, s: int, field) -> str:
    """映射签名，如 "M_2,3 -> M_3,2 (real)"。"""
    name = getattr(field, "value", field)
    return f"M_{m},{n} -> M_{r},{s} ({name})"


def format_duration(seconds: float) -> str:
    """
    格式化耗时

    Returns:
        不足 1 秒显示毫秒，如 "350ms"；否则如 "1m 5.2s"
    """
    if seconds < 0:
        return "0ms"
    if seconds < 1:
        return f"{int(seconds * 1000)}ms"
    minutes = int(seconds // 60)
    rest = seconds - 60 * minutes
    if minutes:
        return f"{minutes}m {rest:.1f}s"
    return f"{rest:.1f}s"


def make_excerpt(text: Optional[str], limit: int = 120) -> str:
    """
    生成单行摘要，用于把解析失败的输入片段写进诊断信息

    Args:
        text: 原始文本
        limit: 最大长度
    """
    if not text:
        return ""
    text = re.sub(r'\s+', ' ', text).strip()
    if len(text) <= limit:
        return text
    return text[:limit] + "..."
