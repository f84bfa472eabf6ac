from root_geometry.exceptions import GeometryError


class BudgetExceeded(GeometryError):
    default_detail = 'The requested tree radius exceeds the configured budget.'
    default_code = 'tree_budget_exceeded'


class InvalidTreeParameters(GeometryError):
    default_detail = 'A tree building needs q >= 2 and radius >= 1.'
    default_code = 'invalid_tree_parameters'


class MarginExceeded(GeometryError):
    default_detail = 'The vertex is too close to the truncation boundary.'
    default_code = 'margin_exceeded'


class NoWitness(GeometryError):
    default_detail = 'No edge of the standard apartment realizes the retraction.'
    default_code = 'no_witness'
