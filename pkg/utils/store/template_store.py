import os
import tempfile
from pathlib import Path
from typing import List, Union
from utils.exceptions import DuplicateIdError, InvalidIdError, TemplateFileError, TemplateFormatError
from utils.logging import logger
from utils.models.data_models import Template
from utils.store.store_keys import TEMPLATE_SUFFIX, template_filename
from utils.store.template_codec import parse_template, serialize_template


class TemplateStore:
    """Directory of enrolled templates, one ``<id>.lipt`` file each.

    Writes go through a temporary file in the same directory followed by an
    atomic rename, so readers never see a partial template. One writer per
    directory is assumed.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._logger = logger.bind(module='TemplateStore')

    def enroll(self, t: Template, overwrite: bool = False) -> Path:
        target = self.path / template_filename(t.id)
        if target.exists() and not overwrite:
            self._logger.error(f"❌ Template id '{t.id}' is already enrolled in {self.path}")
            raise DuplicateIdError(f"template id '{t.id}' already exists in {self.path}")

        self.path.mkdir(parents=True, exist_ok=True)
        payload = serialize_template(t)
        fd, tmp_name = tempfile.mkstemp(dir=self.path, prefix=f'.{t.id}.', suffix='.tmp')
        try:
            with os.fdopen(fd, 'wb') as f:
                f.write(payload)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp_name, target)
        except BaseException:
            Path(tmp_name).unlink(missing_ok=True)
            raise
        self._logger.success(f"✅ Enrolled template '{t.id}' at {target}")
        return target

    def load_all(self) -> List[Template]:
        """Parse every stored template, sorted by id.

        A corrupt file, or one whose id line disagrees with its file name, aborts the load.
        """
        if not self.path.is_dir():
            self._logger.warning(f"⚠️ Template store {self.path} does not exist, treating it as empty")
            return []
        templates = []
        for file in sorted(self.path.glob(f'*{TEMPLATE_SUFFIX}')):
            try:
                template = parse_template(file.read_bytes())
                if template_filename(template.id) != file.name:
                    raise TemplateFormatError(f"id '{template.id}' does not match the file name")
            except (TemplateFormatError, InvalidIdError) as e:
                self._logger.error(f"💥 Corrupt template file {file.name}: {e}")
                raise TemplateFileError(file, e) from e
            templates.append(template)
        templates.sort(key=lambda t: t.id)
        self._logger.info(f"📦 Loaded {len(templates)} templates from {self.path}")
        return templates
