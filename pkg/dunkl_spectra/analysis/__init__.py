from .regions import (
    REGION_CLAUSES,
    Bound,
    Clause,
    ClauseVerdict,
    ExponentPoint,
    HypothesisReport,
    RegionId,
    RegionVerdict,
    as_region,
    exponent_lemma_holds,
    in_union,
    j1_sufficient,
    k1_sufficient,
    region_member,
    region_verdict,
    require_theorem_V,
    s1_sufficient,
    s_point_for_case,
    theorem_V_hypotheses,
)
from .fitting import (
    FitReport,
    diagonal_form_values,
    fit_decay_exponent,
    fit_form_bound,
    fit_gautschi_constant,
    fit_lower_constant,
    fit_tprime_bound,
    fit_weierstrass_constant,
    mixed_diagonal,
)

__all__ = [
    'RegionId', 'Bound', 'Clause', 'ClauseVerdict', 'RegionVerdict', 'ExponentPoint',
    'REGION_CLAUSES', 'as_region', 'region_member', 'region_verdict', 'in_union',
    'j1_sufficient', 'k1_sufficient', 's1_sufficient', 'exponent_lemma_holds', 's_point_for_case',
    'HypothesisReport', 'theorem_V_hypotheses', 'require_theorem_V',
    'FitReport', 'diagonal_form_values', 'mixed_diagonal',
    'fit_lower_constant', 'fit_form_bound', 'fit_tprime_bound', 'fit_decay_exponent',
    'fit_weierstrass_constant', 'fit_gautschi_constant',
]
