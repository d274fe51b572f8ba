# -*- coding: utf-8 -*-
"""
Package setup for mimo-outage-tools
"""
######################
# Standard Libraries #
######################
from setuptools import setup, find_packages

# We use the version to construct the DOWNLOAD_URL.
VERSION      = '0.1.0'

# URL to the repository on Github.
REPO_URL     = 'https://github.com/mimo-outage/mimo-outage-tools'
# Github will generate a tarball as long as you tag your releases, so don't
# forget to tag!
DOWNLOAD_URL = ''.join((REPO_URL, '/tarball/release/', VERSION))

REQUIREMENTS = ['colorama', 'docopt', 'eventlet', 'mpmath', 'numpy', 'texttable']

setup(
    name             = 'mimo-outage-tools',
    version          = VERSION,
    description      = 'Exact and asymptotic outage probability of Rayleigh MIMO channels',
    url              = REPO_URL,
    download_url     = DOWNLOAD_URL,
    license          = 'All Rights Reserved.',
    packages         = find_packages(exclude=['test', 'test.*']),
    python_requires  = '>=3.8',
    # dependencies are pinned in requirements.txt
    install_requires = REQUIREMENTS,
    entry_points     = {
        'console_scripts': [
            'mimo-outage        = mimo_outage.cli.main:main',
            'mimo-outage-exact  = mimo_outage.cli.exact:main',
            'mimo-outage-sweep  = mimo_outage.cli.sweep:main',
            'mimo-outage-gain   = mimo_outage.cli.gain:main',
            'mimo-outage-verify = mimo_outage.cli.verify:main',
        ],
    },
)
