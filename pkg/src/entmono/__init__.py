"""Pure bipartite entanglement: measures, LOCC comparability and non-monotonicity."""
