from root_geometry.exceptions import GeometryError


class OperatorUndefined(GeometryError):
    default_detail = 'The operator is not defined on this gallery.'
    default_code = 'operator_undefined'


class NotSimpleRoot(GeometryError):
    default_detail = 'Folding operators are indexed by simple roots.'
    default_code = 'not_simple_root'


class NotOriginBased(GeometryError):
    default_detail = 'Folding operators act on galleries starting at the origin.'
    default_code = 'not_origin_based'


class BudgetExceeded(GeometryError):
    default_detail = 'The orbit exceeds the configured budget.'
    default_code = 'budget_exceeded'


class InconsistentBlocks(GeometryError):
    default_detail = 'Neighbouring block maps disagree on a shared panel.'
    default_code = 'inconsistent_blocks'
