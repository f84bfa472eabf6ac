import io
import re
from fractions import Fraction

from rest_framework import serializers
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from root_geometry.models import SupportedType

from .models import CombinatorialGallery, Face, GalleryDocument

RATIONAL_PATTERN = re.compile(r'^-?\d+(/\d+)?$')


class RationalField(serializers.Field):
    """Exact rational written as ``"a"`` or ``"a/b"``."""
    default_error_messages = {
        'invalid': 'Expected a rational string "a" or "a/b", got {value!r}.',
        'zero_denominator': 'Zero denominator in {value!r}.',
    }

    def to_internal_value(self, data):
        if not isinstance(data, str) or not RATIONAL_PATTERN.match(data):
            self.fail('invalid', value=data)
        numerator, _, denominator = data.partition('/')
        denominator = int(denominator or 1)
        if denominator == 0:
            self.fail('zero_denominator', value=data)
        return Fraction(int(numerator), denominator)

    def to_representation(self, value):
        return str(Fraction(value))


class FaceField(serializers.ListField):
    child = serializers.ListField(child=RationalField(), allow_empty=False)

    def __init__(self, **kwargs):
        kwargs.setdefault('allow_empty', False)
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        vertices = super().to_internal_value(data)
        return Face(tuple(tuple(v) for v in vertices))

    def to_representation(self, face):
        return [[str(c) for c in vertex] for vertex in face.vertices]


class GallerySerializer(serializers.Serializer):
    panels = serializers.ListField(child=FaceField(), allow_empty=False)
    alcoves = serializers.ListField(child=FaceField())

    def validate(self, attrs):
        if len(attrs['panels']) != len(attrs['alcoves']) + 1:
            raise serializers.ValidationError('A gallery needs exactly one more panel than alcoves.')
        return attrs

    def create(self, validated_data):
        return CombinatorialGallery(tuple(validated_data['panels']), tuple(validated_data['alcoves']))


class GalleryDocumentSerializer(serializers.Serializer):
    root_system = serializers.ChoiceField(choices=SupportedType.choices, source='type_label')
    galleries = GallerySerializer(many=True)

    def validate(self, attrs):
        rank = int(attrs['type_label'][1])
        for index, gallery in enumerate(attrs['galleries']):
            for face in gallery['panels'] + gallery['alcoves']:
                if any(len(vertex) != rank for vertex in face.vertices):
                    raise serializers.ValidationError(
                        f'Gallery {index}: vertices of {attrs["type_label"]} need {rank} coordinates.'
                    )
        return attrs

    def create(self, validated_data):
        galleries = tuple(
            CombinatorialGallery(tuple(g['panels']), tuple(g['alcoves']))
            for g in validated_data['galleries']
        )
        return GalleryDocument(validated_data['type_label'], galleries)


def document_from_data(data):
    serializer = GalleryDocumentSerializer(data=data)
    if not serializer.is_valid():
        raise ParseError(serializer.errors)
    return serializer.save()


def parse_document(raw):
    """Parse a gallery document from bytes; raises ``ParseError``."""
    if isinstance(raw, str):
        raw = raw.encode('utf-8')
    data = JSONParser().parse(io.BytesIO(raw))
    return document_from_data(data)


def serialize_document(document):
    """Canonical document bytes."""
    return JSONRenderer().render(GalleryDocumentSerializer(document).data)
