"""Netlist generators for gates and arithmetic circuits."""
