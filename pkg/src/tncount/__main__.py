"""Enable running as: python -m tncount"""

from tncount.cli import app

if __name__ == "__main__":
    app()
