# -*- coding: utf-8 -*-
#
# qubokcut documentation build configuration file.

import sys, os

# The package lives under 'lib', not on the default path.
sys.path.insert(0, os.path.abspath(os.path.join('..', '..', 'lib')))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest',
              'sphinx.ext.intersphinx']

source_suffix = '.rst'
master_doc = 'index'

project = u'qubokcut'
copyright = u'2026, qubokcut developers'
version = '0.1'
release = '0.1'

exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'default'
htmlhelp_basename = 'qubokcutdoc'

intersphinx_mapping = {'python': ('https://docs.python.org/3', None)}

# Modules for the API pages.
autopackage_name = ['qubokcut', 'qubokcut.edgelist', 'qubokcut.generate',
                    'qubokcut.penalty', 'qubokcut.model', 'qubokcut.solve',
                    'qubokcut.formats', 'qubokcut.analysis', 'qubokcut.cli',
                    'qubokcut.shorts', ]

autodoc_member_order = 'bysource'
autodoc_default_flags = ['show-inheritance', 'members', 'special-members']
autoclass_content = 'class'

doctest_global_setup = 'import numpy; import qubokcut'
