version_num = (0, 1, 0)

__name__ = 'gauss_packing'
__fullname__ = 'Certified packing measure estimates for linear-Gauss systems'
__version__ = '.'.join(map(str, version_num))
