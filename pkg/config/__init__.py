from .settings import *
