"""Exact computations for modulated graph algebras: Cartan data, locally free
modules, translation functors, reflection functors, and a catalogue of named
affine examples with scripted verification."""

__version__ = "0.1.0"
