"""Bundled fixtures: toy.csv (12-row categorical table) and p4.json (labelled path graph)."""
