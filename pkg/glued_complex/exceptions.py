from root_geometry.exceptions import GeometryError


class OutsideDomain(GeometryError):
    default_detail = 'The face lies outside the domain of the map.'
    default_code = 'outside_domain'


class ChartMismatch(GeometryError):
    default_detail = 'The face lives in a chart unrelated to this wall.'
    default_code = 'chart_mismatch'


class RegularityViolated(GeometryError):
    default_detail = 'The gallery is not regular for this operator.'
    default_code = 'regularity_violated'

    def __init__(self, detail=None, code=None, index=None):
        super().__init__(detail, code)
        self.index = index
