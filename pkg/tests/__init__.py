"""Test suite for the p-adic Green's function toolkit."""
