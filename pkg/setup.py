from setuptools import setup, find_packages

setup(
    name='PyQuasiIsometry',
    version='0.1.0',
    packages=find_packages(exclude=['tests']),
    license='MIT',
    author='srsviegas',
    description='k-quasi-m-isometric composition operators on one-circuit graphs',
    install_requires=[
        'numpy',
        'pydantic>=2',
        'sympy',
    ],
    extras_require={
        'tables': ['pandas'],
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['pyquasiiso = pyquasiiso.cli:main'],
    },
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics'
    ]
)
