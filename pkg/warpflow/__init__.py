from pkg_resources import get_distribution

try:
    __version__ = get_distribution('warpflow').version
except:
    __version__ = 'local'


__all__ = [
    'common',
    'config',
    'curve',
    'flow',
    'spaceform',
    'symmetry',
    'tasks',
    'versions',
    'warp',
]

from warpflow import *
