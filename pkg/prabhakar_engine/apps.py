from django.apps import AppConfig


class PrabhakarEngineConfig(AppConfig):
    name = 'prabhakar_engine'
    verbose_name = 'Prabhakar Engine'
