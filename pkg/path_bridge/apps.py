from django.apps import AppConfig


class PathBridgeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'path_bridge'
    verbose_name = 'Segments and galleries'
