from root_geometry.exceptions import GeometryError


class RankUnsupported(GeometryError):
    default_detail = 'Only rank-2 root systems can be rendered.'
    default_code = 'rank_unsupported'
