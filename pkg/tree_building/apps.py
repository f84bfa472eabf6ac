from django.apps import AppConfig


class TreeBuildingConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'tree_building'
    verbose_name = 'Truncated tree building'
