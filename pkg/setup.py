#!/usr/bin/env python
# encoding: utf-8


from setuptools import setup, find_packages
from pymsgnn import __package__, __description__, __version__


setup(name=__package__,
      version=__version__,
      description='Magnetic signed Laplacian and MSGNN for signed directed networks',
      long_description=__description__,
      classifiers=[
            'Development Status :: 4 - Beta',
            'License :: OSI Approved :: MIT License',
            'Programming Language :: Python :: 3.8',
            'Intended Audience :: Science/Research',
            'Topic :: Scientific/Engineering :: Information Analysis',
      ],
      keywords=["signed network", "directed network", "magnetic Laplacian", "graph neural network", "spectral clustering"],
      author = 'Alex Gates <ajgates42@gmail.com>',
      license="MIT",
      packages = find_packages(exclude=['examples', 'examples.*']),
      install_requires=[
            'pandas',
            'numpy',
            'scipy',
            'scikit-learn',
            'tqdm',
            'joblib',
            'tomli; python_version < "3.11"',
            ],
      extras_require = {
        'test':['pytest']},
      entry_points={
        'console_scripts':['pymsgnn=pymsgnn.cli:main']},
      include_package_data=True,
      zip_safe=False
      )
