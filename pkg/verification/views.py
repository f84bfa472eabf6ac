import logging
from dataclasses import replace

from django.http import HttpResponse
from drf_yasg import openapi
from drf_yasg.utils import swagger_auto_schema
from rest_framework import status
from rest_framework.decorators import api_view
from rest_framework.exceptions import ValidationError
from rest_framework.response import Response

from folding.services import apply_operator
from gallery.serializers import GalleryDocumentSerializer, document_from_data
from gallery.services import validate
from root_geometry.exceptions import GeometryError

from .rendering import render_gallery_svg
from .serializers import ApplyQuerySerializer, IndexQuerySerializer, ValidationReportSerializer

logger = logging.getLogger(__name__)


def _error(exc):
    return Response({'error': str(exc), 'code': exc.code}, status=status.HTTP_400_BAD_REQUEST)


def _query(serializer_class, request):
    serializer = serializer_class(data=request.query_params)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


def _gallery_at(document, index):
    if index >= len(document.galleries):
        raise ValidationError({'index': [f'The document has {len(document.galleries)} galleries.']})
    return document.galleries[index]


@swagger_auto_schema(
    method='post',
    operation_description='Validate every gallery of a document',
    request_body=GalleryDocumentSerializer,
    responses={
        200: ValidationReportSerializer,
        400: openapi.Response(description='Malformed document'),
    },
)
@api_view(['POST'])
def validate_view(request):
    document = document_from_data(request.data)
    rs = document.root_system
    violations = []
    for gallery in document.galleries:
        violations.extend(v.as_dict() for v in validate(rs, gallery))
    return Response({'valid': not violations, 'violations': violations})


@swagger_auto_schema(
    method='post',
    operation_description='Apply e, f or e~ at a simple root to one gallery of the document',
    request_body=GalleryDocumentSerializer,
    query_serializer=ApplyQuerySerializer,
    responses={
        200: GalleryDocumentSerializer,
        400: openapi.Response(description='Operator undefined or malformed input'),
    },
)
@api_view(['POST'])
def apply_view(request):
    params = _query(ApplyQuerySerializer, request)
    document = document_from_data(request.data)
    gallery = _gallery_at(document, params['index'])
    try:
        result = apply_operator(
            document.root_system, gallery, params['root'], params['op'],
            strict_paper=params['strict_paper'],
        )
    except GeometryError as exc:
        logger.debug('apply rejected: %s', exc)
        return _error(exc)
    galleries = list(document.galleries)
    galleries[params['index']] = result.gallery
    payload = GalleryDocumentSerializer(replace(document, galleries=tuple(galleries))).data
    if result.violations:
        payload = dict(payload)
        payload['violations'] = [v.as_dict() for v in result.violations]
    return Response(payload)


@swagger_auto_schema(
    method='post',
    operation_description='Draw one gallery of a rank-2 document as SVG',
    request_body=GalleryDocumentSerializer,
    query_serializer=IndexQuerySerializer,
    responses={
        200: openapi.Response(description='image/svg+xml'),
        400: openapi.Response(description='Rank not supported or malformed input'),
    },
)
@api_view(['POST'])
def render_view(request):
    params = _query(IndexQuerySerializer, request)
    document = document_from_data(request.data)
    gallery = _gallery_at(document, params['index'])
    try:
        svg = render_gallery_svg(document.root_system, gallery)
    except GeometryError as exc:
        return _error(exc)
    return HttpResponse(svg, content_type='image/svg+xml')
