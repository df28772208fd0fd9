"""python -m deltalab"""
from .cli import main

main()
