# Sphinx configuration for the stirling-gautschi-bounds documentation

import os

import stirling_gautschi

project = "Stirling-Gautschi Bounds"
copyright = "2024, Stirling-Gautschi Bounds Contributors"
author = "Stirling-Gautschi Bounds Contributors"

release = stirling_gautschi.__version__
version = release

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "autodoc_traits",
    "sphinx_copybutton",
    "myst_parser",
]

master_doc = "index"
source_suffix = [".md", ".rst"]
exclude_patterns = []
pygments_style = "sphinx"

# the configurables' traits are documented by autodoc_traits
autodoc_member_order = "bysource"

html_theme = "pydata_sphinx_theme"
here = os.path.dirname(os.path.abspath(__file__))
if os.path.exists(os.path.join(here, "_static")):
    html_static_path = ["_static"]

# readthedocs also builds an epub
epub_title = project
epub_exclude_files = ["search.html"]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "traitlets": ("https://traitlets.readthedocs.io/en/stable", None),
    "numpy": ("https://numpy.org/doc/stable", None),
}
