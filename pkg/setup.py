import glob
from setuptools import setup, find_packages


setup(
    name='warpflow',
    version='0.1.0',
    description='warpflow: area-preserving curve flows and isoperimetric checks on warped-product surfaces',
    packages=find_packages(),
    package_data={'warpflow': ['tests/data/*']},
    scripts=glob.glob('scripts/*'),
    test_suite='nose.collector',
    tests_require=['nose >= 1.3'],
    install_requires=[
        'numpy >= 1.17',
        'scipy >= 1.4',
    ],
    license='GPLv3',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3 :: Only',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
    ],
)
