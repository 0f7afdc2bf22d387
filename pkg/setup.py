from setuptools import find_packages, setup

setup(
    name = "qubokcut",
    version="0.1",
    packages=find_packages('lib'),
    package_dir={'': 'lib'},
    install_requires=['numpy', 'networkx', 'dimod'],
    tests_require=['mock', 'hypothesis'],
    extras_require={'test': ['mock', 'hypothesis']},
    entry_points={
        'console_scripts': ['qubokcut=qubokcut.cli:main'],
    },
    license='GPL',
    description='QUBO and R-QUBO models of weighted max k-cut, with tight '
                'penalty coefficients',
    long_description='''\
Builds QUBO (one-hot) and R-QUBO (reduced) penalty models of weighted max
k-cut, with per-vertex penalties from the weighted degrees of the graph.
Includes exhaustive and annealing solvers, verification of the penalty bounds
against a max k-cut oracle, and a feasibility benchmark.'''
)
