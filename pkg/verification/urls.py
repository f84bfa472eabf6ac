from django.urls import path

from .views import apply_view, render_view, validate_view

urlpatterns = [
    path('validate/', validate_view, name='gallery-validate'),
    path('apply/', apply_view, name='gallery-apply'),
    path('render/', render_view, name='gallery-render'),
]
