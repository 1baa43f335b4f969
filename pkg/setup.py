from setuptools import setup

setup(
    name="xmodlie",
    version="0.1",
    packages=[
        "xmodlie"
    ],
    package_data={"xmodlie": ["corpus/*.json"]},
    install_requires=["numpy", "sympy", "colorama"],
    entry_points={"console_scripts": ["xmodlie=xmodlie.cli:run"]},
    setup_requires=["pytest-runner"],
    tests_require=["pytest", "hypothesis"],
)
