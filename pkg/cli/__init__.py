"""
Command-line workflow: simulate -> localize -> evaluate -> fit-sensor -> montecarlo.
"""
