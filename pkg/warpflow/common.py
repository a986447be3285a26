import csv
import json
import numbers
import os
import sys
from warpflow import versions

class Error (Exception): pass

allowed_families = ['euclidean', 'sphere', 'hyperbolic', 'cylinder', 'scaled_sinh', 'tabulated']
allowed_models = ['euclidean', 'sphere']
terminations = ['converged', 'horizon', 'error']


def check_files_exist(filenames):
    '''Dies if any files in the list of filenames does not exist'''
    files_not_found = [x for x in filenames if not os.path.exists(x)]
    if len(files_not_found):
        for filename in files_not_found:
            print('File not found: "', filename, '"', sep='', file=sys.stderr)
        raise Error('File(s) not found. Cannot continue')


def format_float(x):
    '''Shortest repr that round-trips, so reruns give byte-identical files'''
    if x is None:
        return ''
    if isinstance(x, numbers.Integral):
        return str(int(x))
    return repr(float(x))


def write_csv(filename, header, rows):
    '''Writes rows (iterables of floats, None written as empty) under a header line'''
    with open(filename, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(x) for x in row])


def read_csv(filename, header):
    '''Returns list of columns (lists of floats). Dies if header does not match'''
    check_files_exist([filename])
    with open(filename, newline='') as f:
        reader = csv.reader(f)
        got_header = next(reader, None)
        if got_header != list(header):
            raise Error('Expected header ' + ','.join(header) + ' in file ' + filename + ' but got ' + str(got_header))
        columns = [[] for x in header]
        for line_number, row in enumerate(reader, start=2):
            if len(row) == 0:
                continue
            if len(row) != len(header):
                raise Error('Wrong number of fields at line ' + str(line_number) + ' of file ' + filename)
            try:
                for column, value in zip(columns, row):
                    column.append(float(value))
            except ValueError:
                raise Error('Non-numeric value at line ' + str(line_number) + ' of file ' + filename)
    return columns


def write_json(filename, data):
    with open(filename, 'w') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        print(file=f)


def make_outdir(outdir, force=False):
    try:
        os.mkdir(outdir)
    except FileExistsError:
        if not force:
            raise Error('Output directory "' + outdir + '" already exists. Use --force to overwrite. Cannot continue')
    except Exception:
        raise Error('Error making output directory "' + outdir + '". Cannot continue')


def write_info_file(filename, task):
    '''Records the command line and dependency versions of a run'''
    with open(filename, 'w') as f:
        print(sys.argv[0], task, ' '.join(sys.argv[1:]), file=f)
        versions.get_all_versions(f, raise_error=False)
