"""subhyp test suite"""
