import setuptools
import importlib.util

# Avoid native import statements as we don't want to depend on the package being created yet.
def load_module(module_name, full_path):
    spec = importlib.util.spec_from_file_location(module_name, full_path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module
version = load_module("meyerbhcp.version", "meyerbhcp/version.py")

with open("README.md", "r") as readme_file:
    long_description = readme_file.read()


setuptools.setup(
    name='meyerbhcp',
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    install_requires=[
        'docopt',
        'numpy',
        'scipy>=1.4',
    ],
    extras_require={
        'tests': ['hypothesis'],
    },
    python_requires='>=3.7.0',
    version=version.__version__,
    description='Meyer wavelet regularization for the backward heat problem with time-dependent diffusivity.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    keywords=['inverse-problems', 'heat-equation', 'wavelets', 'regularization'],
    license='MIT License',
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    entry_points={
        # Allow people to run `meyerbhcp` instead of `python -m meyerbhcp`
        'console_scripts': ['meyerbhcp = meyerbhcp.__main__:main']
    },
)
