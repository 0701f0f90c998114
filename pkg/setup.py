import setuptools

import jbtk.constants as constants


def readme():
    with open('README.md') as f:
        return f.read()

setuptools.setup(
    name='jbtk',
    version=str(constants.CURRENT_VERSION),
    description='Triple products and preserver checks for matrix spaces',
    long_description=('Numerical toolkit for the triple product on finite'
                      ' direct sums of rectangular matrix blocks. Compute'
                      ' generalized inverses and range tripotents, decide'
                      ' extreme points and quasi-invertibility, and classify'
                      ' linear maps between such spaces.'),
    license='Apache License 2.0',
    packages=setuptools.find_packages(exclude=['tests']),
    package_data={'jbtk': ['examples/maps/*.json']},
    keywords='jb*-triple triple-product preserver generalized-inverse',
    install_requires=['numpy', 'scipy'],
    include_package_data=True,
    tests_require=['pytest', 'hypothesis'],
    entry_points={'console_scripts': ['jbtk=jbtk.cli:main']},
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        ],
    zip_safe=False)
