import os
import glob
import json
import yaml


def read_yml(path):
    """Solver knob overrides; an empty file reads as no overrides."""
    with open(path, 'r', encoding='utf8') as config:
        return yaml.safe_load(config) or {}


def read_json(path):
    with open(path, 'r', encoding='utf8') as f:
        return json.load(f)


def write_json(path, data):
    # matrix files and reference reports are ascii; keep them diff friendly
    with open(path, 'w', encoding='utf8') as f:
        json.dump(data, f, indent=2)
        f.write('\n')


def list_json_files(directory) -> list:
    return sorted(glob.glob(os.path.join(directory, '*.json')))
