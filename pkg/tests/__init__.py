"""Unit test package for eigendesign."""
