#!/usr/bin/env python3
"""
Agglom Entry Point
Run this file to use the command-line tool, e.g. `python run.py elasticity --graph c4.json`.
"""

import os
import sys

# Add src to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
