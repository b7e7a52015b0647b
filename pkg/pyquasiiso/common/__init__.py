from .examples import *
