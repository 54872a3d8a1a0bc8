"""
User-facing surfaces of the spectra library.
"""
