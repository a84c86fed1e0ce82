# https://packaging.python.org/tutorials/distributing-packages/
# Always prefer setuptools over distutils
from setuptools import setup
# To use a consistent encoding
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='django-polyent',

    # Versions should comply with PEP440. For a discussion on single-sourcing
    # the version across setup.py and the project code, see
    # https://packaging.python.org/en/latest/single_source_version.html
    version='.'.join(map(str, __import__('polyent').VERSION)),

    description=('Entanglement-of-assistance measures and Hamming-weighted'
                 ' polygamy inequality checks.'),
    long_description=long_description,
    long_description_content_type='text/markdown',

    license='MIT',

    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        # How mature is this project? Common values are
        #   3 - Alpha
        #   4 - Beta
        #   5 - Production/Stable
        'Development Status :: 3 - Alpha',

        # Indicate who your project is intended for
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'Framework :: Django',
        'Framework :: Django :: 3.2',
        'Framework :: Django :: 4.2',

        # Pick your license as you wish (should match "license" above)
        'License :: OSI Approved :: MIT License',

        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',

        'Operating System :: OS Independent',

        'Natural Language :: English',
    ],

    # What does your project relate to?
    keywords='quantum entanglement assistance polygamy concurrence',

    packages=[
        'polyent',
        'polyent.management',
        'polyent.management.commands',
    ],

    # List run-time dependencies here. These will be installed by pip when
    # your project is installed. For an analysis of "install_requires" vs pip's
    # requirements files see:
    # https://packaging.python.org/en/latest/requirements.html
    install_requires=[
        'django>=3.2',
        'numpy>=1.20',
        'scipy>=1.7',
    ],
    extras_require={
        'test': ['hypothesis>=6.0'],
    },

    entry_points={
        'console_scripts': [
            'polyent=polyent.__main__:main',
        ],
    },

    python_requires='>=3.8,<4',

    include_package_data=True,
    zip_safe=False
)
