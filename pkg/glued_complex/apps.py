from django.apps import AppConfig


class GluedComplexConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'glued_complex'
    verbose_name = 'Glued apartments and retractions'
