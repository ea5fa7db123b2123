from typing import List

from staged_reduction.entities.algebra.lie_algebra import LieAlgebraSpec
from staged_reduction.entities.output.validation_report import ValidationReport
from staged_reduction.entities.stages.stage_chain import InvariantMetric, StageChain
from staged_reduction.entities.stages.staged_structure import StagedStructure
from staged_reduction.validate_structures.validate_algebra import validate_algebra
from staged_reduction.validate_structures.validate_chain import validate_chain
from staged_reduction.validate_structures.validate_equivalence import validate_bracket_equivalence


def validate_all(alg: LieAlgebraSpec, chain: StageChain, metric: InvariantMetric) -> List[ValidationReport]:
    """
    Run every structural check: Lie-algebra axioms, ideal condition of the chain and, when these pass, the
    bracket-by-stages equivalence sweep.
    :return: list of reports, in the order in which the checks were run
    """
    reports = validate_algebra(alg)
    reports.append(validate_chain(alg=alg, chain=chain))
    if all(report.passed for report in reports):
        staged = StagedStructure(alg=alg, chain=chain, metric=metric)
        reports.append(validate_bracket_equivalence(staged))
    return reports
