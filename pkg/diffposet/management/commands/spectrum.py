from ...runner import Command as Run
from ..base import DiffposetCommand


class Command(DiffposetCommand):
    help = 'Verifies the factorization of det(DU_n + tI) and weak rank growth'
    command = Run.SPECTRUM
