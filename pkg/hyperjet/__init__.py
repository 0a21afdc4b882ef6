from hyperjet.version import __version__
