import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="staged-reduction",
    version="0.1.0",
    description="Lagrangian reduction by stages for Lie algebras and trivial principal bundles",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    package_data={'staged_reduction': ['examples/algebras/*.json', 'examples/configs/*.json']},
    include_package_data=True,
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.6'
    ],
    entry_points={
        'console_scripts': ['staged-reduction=staged_reduction.cli:main'],
    },
    python_requires='>=3.7',
)
