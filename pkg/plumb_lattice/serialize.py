from __future__ import annotations
import json
from typing import Any, List, TextIO
from pydantic import BaseModel
from .schema import Embedding, Plumbing


def to_json(result: BaseModel | List[BaseModel]) -> str:
    """
    Convert a report model (or a list of them) to a JSON string.

    :param result: The model to serialize
    :type result: BaseModel | List[BaseModel]
    :return: Pretty-printed JSON string with 2-space indentation
    :rtype: str
    """
    if isinstance(result, list):
        payload: Any = [r.model_dump(mode="json") for r in result]
    else:
        payload = result.model_dump(mode="json")
    return json.dumps(payload, ensure_ascii=False, indent=2)


def write_json(path: str, result: BaseModel | List[BaseModel]) -> None:
    """
    Write a report model to a JSON file.

    :param path: File path where JSON will be written
    :type path: str
    :param result: The model to serialize
    :type result: BaseModel | List[BaseModel]
    :return: None
    :rtype: None
    """
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json(result))


def read_plumbing(stream: TextIO) -> Plumbing:
    """
    Parse the graph interchange format ``{"chains": [[w, ...], ...]}``.

    Extra keys are ignored, so any report that embeds a plumbing under
    ``chains`` can be piped back in.

    :param stream: Open text stream
    :type stream: TextIO
    :return: The validated plumbing
    :rtype: Plumbing
    :raises ValueError: If the text is not JSON or has no ``chains`` key
    :raises pydantic.ValidationError: If the chains are invalid
    """
    data = json.loads(stream.read())
    if isinstance(data, dict) and "chains" not in data and "plumbing" in data:
        data = data["plumbing"]
    if not isinstance(data, dict) or "chains" not in data:
        raise ValueError('graph JSON must be an object with a "chains" list')
    return Plumbing(chains=data["chains"])


def read_embeddings(path: str) -> List[Embedding]:
    """Load the ``matrices`` list of a golden file."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return [Embedding(rows=m) for m in data["matrices"]]
