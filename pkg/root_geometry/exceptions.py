class GeometryError(Exception):
    """
    Base class for every domain error of the folding apps.

    Mirrors DRF's APIException: a human readable ``detail`` and a stable
    machine readable ``code``.
    """
    default_detail = 'A geometry error occurred.'
    default_code = 'error'

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def __str__(self):
        return str(self.detail)


class UnsupportedType(GeometryError):
    default_detail = 'Unsupported root system type.'
    default_code = 'unsupported_type'


class ForeignRoot(GeometryError):
    default_detail = 'The vector is not a root of this root system.'
    default_code = 'foreign_root'


class NotCoweight(GeometryError):
    default_detail = 'The vector is not an integer combination of coroots.'
    default_code = 'not_coweight'


class NotVertex(GeometryError):
    default_detail = 'The point is not a vertex of the complex.'
    default_code = 'not_vertex'
