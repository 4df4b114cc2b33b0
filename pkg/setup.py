from setuptools import setup, find_packages


long_description = """
# lfinterp

Coarse-grid Lax-Friedrichs solves plus batched cubic Hermite densification of
flow trajectories, with an error-bound harness against the fine-grid solve and
a cost model / timing harness for the two approaches.

"""


setup(
  name='lfinterp',
  version='0.1.0',
  description='coarse Lax-Friedrichs solves with cubic trajectory densification',
  long_description=long_description,
  long_description_content_type="text/markdown",
  license='MIT',
  packages=find_packages(exclude=('tests', 'tests.*', 'examples', 'examples.*')),
  entry_points={
    'console_scripts': ['lfinterp=lfinterp.cli:main'],
  },
  install_requires=[
    'numpy',
    'scipy',
    'click>=7.0',
    'tqdm',
    'pyyaml',
  ],
  python_requires='>=3.8',
  zip_safe=False)
