#!/usr/bin/python3
import sys

from aclite import AcLiteCLI

def main():
    """Main entry point for the aclite CLI."""
    sys.exit(AcLiteCLI().exitCode)

if __name__ == '__main__':
    main()
