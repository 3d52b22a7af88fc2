from setuptools import setup, find_packages

setup(
    name="se2-wavelet",
    version="1.0.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "pandas>=2.0",
        "pydantic>=1.10,<2",
        "python-dotenv>=1.0",
    ],
    entry_points={
        "console_scripts": [
            "se2wavelet=se2wavelet.main:run",
        ],
    },
    python_requires=">=3.9",
)
