"""
mvlab: exact-arithmetic MV-algebras, PMV-algebras and MV-modules on rational carriers.
"""

__version__ = "0.1.0"
default_app_config = "mvlab.apps.MvlabConfig"
