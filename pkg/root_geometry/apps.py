from django.apps import AppConfig


class RootGeometryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'root_geometry'
    verbose_name = 'Root systems and affine isometries'
