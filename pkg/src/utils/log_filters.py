"""Logging filter that abbreviates long numeric array dumps.

见证矩阵、残差矩阵一旦被 f-string 写进日志会占满整屏。ArrayAbbreviationFilter
在写入前把超长的方括号数字序列截短，只保留开头和元素个数。
"""

import logging
import re


# 至少含一个逗号或空白分隔的数字序列，允许嵌套方括号（numpy repr / JSON）
_ARRAY_PATTERN = re.compile(r"\[[\[\]\s,0-9eE+\-.jnaifNI()]*\]")

DEFAULT_LIMIT = 80


class ArrayAbbreviationFilter(logging.Filter):
    """logging.Filter：把超过 limit 字符的数组文本替换为摘要。"""

    def __init__(self, limit=DEFAULT_LIMIT):
        super().__init__()
        self.limit = limit

    def filter(self, record):
        try:
            message = record.getMessage()
        except Exception:
            return True
        shortened = abbreviate(message, self.limit)
        if shortened != message:
            record.msg = shortened
            record.args = ()
        return True


def _count_numbers(text):
    return len(re.findall(r"[-+]?\d[\d.eE+\-j]*", text))


def abbreviate(text, limit=DEFAULT_LIMIT):
    if not text:
        return text

    def shorten(match):
        chunk = match.group(0)
        if len(chunk) <= limit:
            return chunk
        return f"{chunk[: limit // 2]}... <{_count_numbers(chunk)} numbers>"

    return _ARRAY_PATTERN.sub(shorten, str(text))
