from warpflow import __version__ as warpflow_version

def run(args=None):
    print(warpflow_version)
    return 0
