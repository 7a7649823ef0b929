# polyharm/__init__.py

"""
Вычислительный движок для вращательно-симметричных полигармонических отображений.
"""

__version__ = "1.0.0"
