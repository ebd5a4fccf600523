# -*- coding: utf-8 -*-
#
# cebeam documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# If extensions (or modules to document with autodoc) are in another directory,
# add these directories to sys.path here.
sys.path.insert(0, os.path.abspath('../'))

import cebeam

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.coverage',
    'sphinx.ext.napoleon',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

# General information about the project.
project = 'cebeam'

# The short X.Y version and the full version.
version = cebeam.__version__
release = version

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinxdoc'
html_static_path = ['_static']
htmlhelp_basename = 'cebeamdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}
latex_documents = [
  ('index', 'cebeam.tex', 'cebeam Documentation',
   'cebeam developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'cebeam', 'cebeam Documentation',
     ['cebeam developers'], 1)
]
