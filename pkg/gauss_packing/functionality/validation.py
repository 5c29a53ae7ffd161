"""
This file contains the input checks used throughout the package. Each check
raises TypeError, ValueError, KeyError or FileNotFoundError naming the
offending value, and the 'hint' argument says where the value came from.

Author(s): David Marchant
"""

from inspect import signature
from math import isfinite
from os.path import sep, exists, isfile
from typing import Any, _SpecialForm, Union, Type, Dict, List, \
    get_origin, get_args

from ..core.vars import VALID_PATH_CHARS, get_not_imp_msg


def _where(hint:str)->str:
    return f" in '{hint}'" if hint else ""

def check_type(variable:Any, expected_type:Type, alt_types:List[Type]=[],
        or_none:bool=False, hint:str="")->None:
    """Checks if a given variable is of the expected type, a Union of types
    or one of the alternative types. None is only accepted if 'or_none' is
    set."""
    allowed = list(get_args(expected_type)) \
        if get_origin(expected_type) is Union else [expected_type]
    allowed += alt_types

    if variable is None:
        if or_none:
            return
        raise TypeError(f"Not allowed None{_where(hint)}. Expected "
            f"{expected_type}.")

    if expected_type == Any:
        return

    # bool is an int subclass, but never a valid count or real here
    is_stray_bool = isinstance(variable, bool) and bool not in allowed
    if is_stray_bool or not isinstance(variable, tuple(allowed)):
        raise TypeError(f"Expected type(s){_where(hint)} are '{allowed}', "
            f"got {type(variable)}")

def check_real(variable:Any, hint:str="")->None:
    """Checks that a given variable is a finite int or float."""
    check_type(variable, float, alt_types=[int], hint=hint)
    if not isfinite(variable):
        raise ValueError(f"Value {variable}{_where(hint)} is not finite.")

def check_implementation(child_func, parent_class):
    """Checks that a method has been overridden from the one on the parent
    class, keeping the parent's parameter names. Raises a
    NotImplementedError if not."""
    name = child_func.__name__
    if not hasattr(parent_class, name):
        raise AttributeError(f"Parent class {parent_class} does not "
            f"implement base function {name} for children to override.")
    parent_func = getattr(parent_class, name)

    if child_func == parent_func or signature(child_func).parameters.keys() \
            != signature(parent_func).parameters.keys():
        raise NotImplementedError(get_not_imp_msg(parent_class, parent_func))

def valid_string(variable:str, valid_chars:str, min_length:int=1, hint:str=""
        )->None:
    """Checks a string is long enough and made only of the given
    characters."""
    check_type(variable, str, hint=hint)
    check_type(valid_chars, str, hint=hint)

    if len(variable) < min_length:
        raise ValueError(f"String '{variable}'{_where(hint)} is too short. "
            f"Minimum length is {min_length}")

    bad = [c for c in variable if c not in valid_chars]
    if bad:
        raise ValueError(f"Invalid character '{bad[0]}'{_where(hint)}. Only "
            f"valid characters are: {valid_chars}")

def valid_dict(variable:Dict[Any, Any], key_type:Type, value_type:Type,
        required_keys:List[Any]=[], optional_keys:List[Any]=[],
        strict:bool=True, min_length:int=1, hint:str="")->None:
    """Checks the key and value types of a dictionary, and that its keys
    include every required key. With 'strict' set no other keys than the
    required and optional ones are allowed."""
    check_type(variable, Dict, hint=hint)
    check_type(key_type, Type, alt_types=[_SpecialForm], hint=hint)
    check_type(value_type, Type, alt_types=[_SpecialForm], hint=hint)
    check_type(required_keys, list, hint=hint)
    check_type(optional_keys, list, hint=hint)
    check_type(strict, bool, hint=hint)
    where = _where(hint)

    if len(variable) < min_length:
        raise ValueError(f"Dictionary '{variable}'{where} is below minimum "
            f"length of {min_length}")

    for k, v in variable.items():
        if key_type != Any and not isinstance(k, key_type):
            raise TypeError(f"Key {k}{where} had unexpected type "
                f"'{type(k)}' rather than '{key_type}'")
        if value_type != Any and not isinstance(v, value_type):
            raise TypeError(f"Value {v} of key {k}{where} had unexpected "
                f"type '{type(v)}' rather than '{value_type}'")

    missing = [k for k in required_keys if k not in variable]
    if missing:
        raise KeyError(f"Missing required key '{missing[0]}'{where}.")

    if strict:
        allowed = set(required_keys) | set(optional_keys)
        extra = [k for k in variable if k not in allowed]
        if extra:
            raise ValueError(f"Unexpected key '{extra[0]}'{where}. Allowed "
                f"keys are {sorted(allowed, key=str)}")

def valid_list(variable:List[Any], entry_type:Type,
        alt_types:List[Type]=[], min_length:int=1, hint:str="")->None:
    """Checks a list, or tuple, is long enough and that every entry has the
    expected type."""
    check_type(variable, List, alt_types=[tuple], hint=hint)

    if len(variable) < min_length:
        raise ValueError(f"List '{variable}'{_where(hint)} is too short. "
            f"Should be at least of length {min_length}")

    for i, entry in enumerate(variable):
        check_type(entry, entry_type, alt_types=alt_types,
            hint=f"{hint}[{i}]" if hint else "")

def valid_path(variable:str, allow_base:bool=False, extension:str="",
        min_length:int=1, hint:str=""):
    """Check that a given string is a path, relative unless 'allow_base' is
    set, ending in 'extension' if one is given."""
    valid_string(variable, VALID_PATH_CHARS, min_length=min_length, hint=hint)

    if not allow_base and variable.startswith(sep):
        raise ValueError(f"Cannot accept path '{variable}'{_where(hint)}. "
            "Must be relative.")

    if extension and not variable.endswith(extension):
        raise ValueError(f"Path '{variable}'{_where(hint)} does not have "
            f"required extension '{extension}'.")

def valid_existing_file_path(variable:str, allow_base:bool=False,
        extension:str="", hint:str=""):
    valid_path(variable, allow_base=allow_base, extension=extension, hint=hint)
    if not exists(variable):
        raise FileNotFoundError(f"Requested file path '{variable}'"
            f"{_where(hint)} does not exist.")
    if not isfile(variable):
        raise ValueError(f"Requested file '{variable}'{_where(hint)} is not "
            "a file.")

def valid_natural(num:int, hint:str="")->None:
    """Check a given value is an int of at least 0."""
    check_type(num, int, hint=hint)
    if num < 0:
        raise ValueError(f"Value {num}{_where(hint)} is not a natural "
            "number.")

def valid_positive(num:Union[int,float], integer:bool=False, hint:str=""
        )->None:
    """Check a given value is strictly positive. If 'integer' is set then only
    ints are accepted, otherwise any finite real."""
    if integer:
        check_type(num, int, hint=hint)
    else:
        check_real(num, hint=hint)
    if num <= 0:
        raise ValueError(f"Value {num}{_where(hint)} is not strictly "
            "positive.")

def valid_choice(variable:Any, choices:List[Any], hint:str="")->None:
    if variable not in choices:
        raise ValueError(f"Value '{variable}'{_where(hint)} is not one of "
            f"{choices}.")
