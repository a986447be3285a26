import argparse
import sys
from warpflow import versions

def run(args=None):
    parser = argparse.ArgumentParser(
        description = 'Checks all dependencies are found and are correct versions',
        usage = 'warpflow progcheck'
    )
    parser.add_argument('--debug', action='store_true', help='Debug mode with very verbose output')
    options = parser.parse_args(args)
    ok = versions.get_all_versions(sys.stdout, raise_error=False, debug=options.debug)
    return 0 if ok else 1
