import setuptools

with open("README.md", "r") as fh:
	long_description = fh.read()

setuptools.setup(
	name = "lfbasis",
	version = "0.1.0",
	description = "Orthonormal bases of continuous functions on local field integer rings",
	long_description = long_description,
	long_description_content_type = "text/markdown",
	license = "BSD-3-Clause",
	packages = setuptools.find_packages(exclude=["test", "test.*"]),
	classifiers = [
		"Programming Language :: Python :: 3",
		"License :: OSI Approved :: BSD License",
		"Operating System :: OS Independent",
	],
	install_requires=[
		"pandas",
		"jinja2",
		"pyyaml",
		"tqdm",
		"sympy",
	],
	scripts=["bin/lfbasis"]
)
