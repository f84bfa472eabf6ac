from django.apps import AppConfig


class FoldingConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'folding'
    verbose_name = 'Folding operators'
