__package__ = 'pymsgnn'
__title__ = 'pymsgnn: magnetic signed Laplacians and MSGNN for signed directed networks'
__description__ = 'Spectral tools and graph neural networks for signed, directed, weighted networks.'

__copyright__ = '2021, Gates, A.J.'

__author__ = """\n""".join([
    'Alexander J Gates <ajgates42@gmail.com>'
])

__version__ = '0.1.0'
__release__ = '0.1.0'
