# Configuration file for the Sphinx documentation builder.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))
from recommonmark.transform import AutoStructify


project = 'lfbasis'
copyright = '2026, lfbasis developers'
author = 'lfbasis developers'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'recommonmark',
    'sphinx_markdown_tables',
]

source_suffix = ['.rst', '.md']
master_doc = 'index'
exclude_patterns = ['_build', 'modules.rst']

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'navigation_depth': 2,
}


def setup(app):
    app.add_config_value('recommonmark_config', {
        'enable_math': False,
        'enable_inline_math': False,
        'enable_eval_rst': True,
    }, True)
    app.add_transform(AutoStructify)
