import os
import sys

# make the sibling oracle/helper modules importable from every test file
sys.path.insert(0, os.path.dirname(__file__))
