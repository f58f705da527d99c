"""分类结论：Yes 必带证书，No 必带见证或原因代码。"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from src.canonical import CanonicalForm
from src.matcore import Mat, ParameterError


class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    INAPPLICABLE = "Inapplicable"


# 原因代码
CANONICAL_FORM_FOUND = "CANONICAL_FORM_FOUND"
NOT_PRESERVER = "NOT_PRESERVER"
Q_NOT_IDENTITY = "Q_NOT_IDENTITY"
IMAGE_NOT_PARTIAL_ISOMETRY = "IMAGE_NOT_PARTIAL_ISOMETRY"
SCHATTEN_NOT_ONE = "SCHATTEN_NOT_ONE"
P_EQUALS_TWO = "P_EQUALS_TWO"
K_TOO_SMALL = "K_TOO_SMALL"
TRACE_NOT_ONE = "TRACE_NOT_ONE"
REAL_FIELD_SUFFICIENT_ONLY = "REAL_FIELD_SUFFICIENT_ONLY"


@dataclass(frozen=True, eq=False)
class ClassifierVerdict:
    verdict: Verdict
    certificate: Optional[CanonicalForm] = None
    witness: Optional[Tuple[Mat, ...]] = None
    detail: str = ""

    def __post_init__(self):
        if self.verdict is Verdict.YES and self.certificate is None:
            raise ParameterError("A Yes verdict needs a canonical-form certificate")
        if self.verdict is Verdict.NO and self.witness is None and not self.detail:
            raise ParameterError("A No verdict needs a witness or a detail code")

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES


def yes(certificate: CanonicalForm, detail: str = CANONICAL_FORM_FOUND) -> ClassifierVerdict:
    return ClassifierVerdict(Verdict.YES, certificate=certificate, detail=detail)


def no(detail: str, witness=None, certificate=None) -> ClassifierVerdict:
    return ClassifierVerdict(
        Verdict.NO,
        certificate=certificate,
        witness=None if witness is None else tuple(witness),
        detail=detail,
    )


def inapplicable(detail: str, certificate=None) -> ClassifierVerdict:
    return ClassifierVerdict(Verdict.INAPPLICABLE, certificate=certificate, detail=detail)
