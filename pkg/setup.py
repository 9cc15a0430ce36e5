from setuptools import setup

setup(
    name="rfgrowth",
    version="0.1.0",
    description="Residual finiteness growth of integers, quadratic rings, free, nilpotent, SL_k(Z) and Grigorchuk groups.",
    packages=['rfgrowth', 'rfgrowth._data'],
    package_data={'rfgrowth._data': ['golden.csv']},
    entry_points={'console_scripts': ['rfg = rfgrowth.cli:main']}
)
