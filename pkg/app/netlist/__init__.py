"""Circuit graph, levelization and simulation."""
