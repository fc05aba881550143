"""Live MediaWiki snapshot download backing the fetch-snapshot command.

Deliberately isolated: nothing else in the toolkit imports this module,
and it is excluded from the test suite. The emitted file is an ordinary
snapshot consumable by load_snapshot.
"""

from __future__ import annotations

import json
import logging
import urllib.parse
import urllib.request
from collections import deque

log = logging.getLogger(__name__)

_USER_AGENT = "nerforge/0.1 (snapshot fetcher)"


def _api_get(api: str, params: dict) -> dict:
    query = urllib.parse.urlencode({**params, "format": "json"})
    request = urllib.request.Request(
        f"{api}?{query}", headers={"User-Agent": _USER_AGENT}
    )
    with urllib.request.urlopen(request, timeout=60) as response:
        return json.loads(response.read().decode("utf-8"))


def _category_members(api: str, category: str) -> tuple[list[str], list[str]]:
    """(subcategory names, article titles) of one category, paginated."""
    subcategories: list[str] = []
    articles: list[str] = []
    params = {
        "action": "query",
        "list": "categorymembers",
        "cmtitle": f"Category:{category}",
        "cmlimit": "500",
    }
    while True:
        data = _api_get(api, params)
        for member in data.get("query", {}).get("categorymembers", ()):
            namespace = member.get("ns")
            title = member.get("title", "")
            if namespace == 14:
                subcategories.append(title.split(":", 1)[-1])
            elif namespace == 0:
                articles.append(title)
        cont = data.get("continue")
        if not cont:
            return subcategories, articles
        params.update(cont)


def _article_record(api: str, title: str) -> dict:
    data = _api_get(
        api,
        {
            "action": "query",
            "prop": "extracts|links|categories",
            "titles": title,
            "explaintext": 1,
            "pllimit": "500",
            "cllimit": "500",
            "plnamespace": "0",
            "redirects": 1,
        },
    )
    pages = data.get("query", {}).get("pages", {})
    page = next(iter(pages.values()), {})
    text = page.get("extract", "") or ""
    summary = text.split("\n\n", 1)[0]
    return {
        "kind": "article",
        "title": title,
        "summary": summary,
        "body": text,
        "categories": [
            c.get("title", "").split(":", 1)[-1]
            for c in page.get("categories", ())
        ],
        "interlinks": [l.get("title", "") for l in page.get("links", ())],
    }


def fetch(
    seeds: list[str], depth: int, api: str, max_articles: int, output: str
) -> int:
    """BFS the live category graph and write a JSON-Lines snapshot."""
    seen_categories: set[str] = set()
    seen_articles: set[str] = set()
    frontier = deque((seed, 0) for seed in seeds)
    records = 0
    with open(output, "w", encoding="utf-8") as handle:
        while frontier:
            name, dist = frontier.popleft()
            if name in seen_categories:
                continue
            seen_categories.add(name)
            log.info("category %r (depth %d)", name, dist)
            subcategories, articles = _category_members(api, name)
            handle.write(
                json.dumps(
                    {
                        "kind": "category",
                        "name": name,
                        "subcategories": subcategories,
                        "articles": articles,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
            records += 1
            if dist < depth:
                frontier.extend(
                    (sub, dist + 1)
                    for sub in subcategories
                    if sub not in seen_categories
                )
            for title in articles:
                if title in seen_articles or len(seen_articles) >= max_articles:
                    continue
                seen_articles.add(title)
                handle.write(
                    json.dumps(_article_record(api, title), ensure_ascii=False) + "\n"
                )
                records += 1
    return records
