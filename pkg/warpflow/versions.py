import importlib
import sys
from pkg_resources import parse_version
from warpflow import __version__ as warpflow_version


min_versions = {
    'numpy': '1.17',
    'scipy': '1.4',
}


def get_all_versions(filehandle, raise_error=True, debug=False):
    '''Reports python and dependency versions to filehandle (None for silence).
       Returns True if all dependencies are found and new enough'''
    if filehandle is not None:
        print('warpflow version:', warpflow_version, file=filehandle)
        print('\nPython version:', file=filehandle)
        print(sys.version, file=filehandle)
        print('\nPython dependencies:', file=filehandle)

    found_bad_module = False

    for name in sorted(min_versions):
        try:
            module = importlib.import_module(name)
            version = module.__version__
            path = module.__file__
            ok = parse_version(version) >= parse_version(min_versions[name])
        except ImportError:
            version = 'NOT_FOUND'
            path = 'NOT_FOUND'
            ok = False

        found_bad_module = found_bad_module or not ok

        if filehandle is not None:
            status = 'OK' if ok else 'ERROR'
            print(name, version, path, status, sep='\t', file=filehandle)
            if debug:
                print('  minimum version:', min_versions[name], file=filehandle)

    if raise_error and found_bad_module:
        print('Some dependencies not satisfied. Cannot continue. Try running: warpflow progcheck', file=sys.stderr)
        sys.exit(1)

    return not found_bad_module
