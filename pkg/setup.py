from setuptools import find_packages, setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

setup(
    name="django-mvlab",
    version="0.1.0",
    description="Pacote Django para álgebra exata de MV-álgebras, PMV-álgebras e MV-módulos sobre os racionais",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Framework :: Django",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    extras_require={
        "dev": [
            "pytest",
            "pytest-django",
            "pytest-cov",
            "black",
            "flake8",
            "isort",
        ],
    },
    entry_points={"console_scripts": ["mvlab = mvlab.cli:main"]},
    scripts=["scripts/entrypoint.sh"],
    include_package_data=True,
    zip_safe=False,
)
