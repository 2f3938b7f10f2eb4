"""
Package: controllers
--------------------
Control-law plugins discovered by the ControllerRegistry.
"""
