from dataclasses import dataclass

from django.db import models


class Operator(models.TextChoices):
    E = 'e', 'e'
    F = 'f', 'f'
    E_TILDE = 'etilde', 'e~'


class Case(models.TextChoices):
    RAISING = 'I', 'Case (I)'
    LOWERING = 'II', 'Case (II)'
    REFLECTING = 'III', 'Case (III)'


CASE_OF = {
    Operator.E: Case.RAISING,
    Operator.F: Case.LOWERING,
    Operator.E_TILDE: Case.REFLECTING,
}


@dataclass(frozen=True)
class OperatorIndices:
    case: str
    root: tuple
    m: int
    j: int
    k: int

    @property
    def operator(self):
        return {case: op for op, case in CASE_OF.items()}[self.case]

    def as_dict(self):
        return {'case': str(self.case), 'root': list(self.root), 'm': self.m, 'j': self.j, 'k': self.k}


@dataclass(frozen=True)
class OperatorResult:
    """Operator output together with the violations of the printed variants."""
    gallery: object
    indices: OperatorIndices
    violations: tuple = ()
