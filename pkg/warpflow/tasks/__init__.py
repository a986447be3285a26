__all__ = [
    'circles',
    'flow',
    'isocheck',
    'perturb',
    'progcheck',
    'symmetrize',
    'version',
]

from warpflow.tasks import *
