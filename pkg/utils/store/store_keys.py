import re
from utils.exceptions import InvalidIdError

TEMPLATE_SUFFIX = '.lipt'
_VALID_ID = re.compile(r'[A-Za-z0-9_-]+')


def template_filename(template_id: str) -> str:
    if not _VALID_ID.fullmatch(template_id):
        raise InvalidIdError(f"template id {template_id!r} may only contain letters, digits, '-' and '_'")
    return f'{template_id}{TEMPLATE_SUFFIX}'
