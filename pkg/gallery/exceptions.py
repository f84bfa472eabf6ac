from root_geometry.exceptions import GeometryError


class IndexOutOfRange(GeometryError):
    default_detail = 'Split index outside the gallery.'
    default_code = 'index_out_of_range'


class JunctionMismatch(GeometryError):
    default_detail = 'The galleries do not meet in a common face.'
    default_code = 'junction_mismatch'


class EndpointNotVertex(GeometryError):
    default_detail = 'The gallery does not end in a vertex.'
    default_code = 'endpoint_not_vertex'


class InvalidFace(GeometryError):
    default_detail = 'The vertex set is not a face of the complex.'
    default_code = 'invalid_face'


class InvalidGalleryType(GeometryError):
    default_detail = 'The gallery type cannot be realized from the origin.'
    default_code = 'invalid_gallery_type'
