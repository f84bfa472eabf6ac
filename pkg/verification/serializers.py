from rest_framework import serializers

from folding.models import Operator


class IndexQuerySerializer(serializers.Serializer):
    index = serializers.IntegerField(min_value=0, default=0)


class ApplyQuerySerializer(IndexQuerySerializer):
    op = serializers.ChoiceField(choices=Operator.choices)
    root = serializers.IntegerField(min_value=1)
    strict_paper = serializers.BooleanField(default=False)


class ViolationSerializer(serializers.Serializer):
    kind = serializers.CharField()
    index = serializers.IntegerField()
    detail = serializers.CharField()


class ValidationReportSerializer(serializers.Serializer):
    valid = serializers.BooleanField()
    violations = ViolationSerializer(many=True)
