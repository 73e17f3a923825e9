import os
import sys
sys.path.insert(0, os.path.abspath('..'))

project = 'pyMSGNN'
copyright = '2021, Alexander Gates'
author = 'Alexander Gates'
release = '0.1.0'

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.coverage', 'sphinx.ext.napoleon']

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'alabaster'
