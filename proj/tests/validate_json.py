"""Validates the JSON printed by a command against a schema file."""
import json
import subprocess
import sys

import jsonschema


def main() -> int:
    schema_path, *command = sys.argv[1:]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    out = subprocess.run(command, check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
    print(f"valid against {schema_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
