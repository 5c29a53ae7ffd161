"""
This file contains functions for reading and writing the files the package
produces: result records, run configurations and scratch directories.

Author(s): David Marchant
"""

import yaml

from os import makedirs, remove, rmdir, walk
from os.path import dirname, exists, isfile, join
from typing import Any, List

from .validation import valid_existing_file_path


def make_dir(path:str, can_exist:bool=True, ensure_clean:bool=False):
    """
    Creates a directory, along with any missing parents.

    :param path: (str) The directory to create.

    :param can_exist: (boolean) [optional] If False, an existing directory
    at the path raises FileExistsError. Default is True.

    :param ensure_clean: (boolean) [optional] If True, an existing directory
    is emptied first. Default is False.

    :return: No return
    """
    if exists(path):
        if isfile(path):
            raise ValueError(f"Cannot create directory {path}, a file of "
                "that name exists.")
        if ensure_clean:
            rmtree(path)
    makedirs(path, exist_ok=can_exist)

def rmtree(directory:str):
    """Deletes a directory and everything below it. A missing directory is
    ignored."""
    if not exists(directory):
        return
    for root, subdirs, files in walk(directory, topdown=False):
        for name in files:
            remove(join(root, name))
        for name in subdirs:
            rmdir(join(root, name))
    rmdir(directory)

def _ensure_parent(filename:str)->None:
    parent = dirname(filename)
    if parent:
        make_dir(parent)

def read_file(filepath:str)->str:
    with open(filepath, 'r') as file:
        return file.read()

def write_file(source:str, filename:str)->None:
    _ensure_parent(filename)
    with open(filename, 'w') as file:
        file.write(source)

def read_yaml(filepath:str, allow_base:bool=True)->Any:
    """
    Loads a yaml file with the safe loader, so only plain yaml types are
    built.

    :param filepath: (str) The file to read.

    :return: (object) The loaded document.
    """
    valid_existing_file_path(filepath, allow_base=allow_base,
        hint="read_yaml.filepath")
    return yaml.safe_load(read_file(filepath))

def write_yaml(source:Any, filename:str)->None:
    """Dumps plain data as block style yaml, keeping the key order of any
    mappings."""
    _ensure_parent(filename)
    with open(filename, 'w') as yaml_file:
        yaml.safe_dump(source, yaml_file, default_flow_style=False,
            sort_keys=False)

def lines_to_string(lines:List[str], join_char:str='\n')->str:
    return join_char.join(lines)
