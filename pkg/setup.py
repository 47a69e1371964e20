from setuptools import setup, find_packages
from diffposet import __version__


def read(file):
    with open(file, 'r') as f:
        return f.read()


setup(
    name='diffposet',
    version='.'.join(str(x) for x in __version__),
    description='Exact verification of r-differential posets: axioms, fundamental vectors, Smith forms and spectra',
    long_description=read('README.rst'),
    long_description_content_type='text/x-rst',
    packages=find_packages(exclude=['tests', 'tests.*']),
    install_requires=[
        'django>=3.2',
        'sympy>=1.9',
    ],
    extras_require={
        'test': ['hypothesis>=6.0'],
    },
    entry_points={
        'console_scripts': ['diffposet=diffposet.cli:main'],
    },
    python_requires='>=3.9',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Framework :: Django :: 3.2',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
