from ...runner import Command as Run
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Checks DU - UD = rI on every rank below the top'
    command = Run.CHECK
