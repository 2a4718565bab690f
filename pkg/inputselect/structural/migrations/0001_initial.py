import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies: list[tuple[str, str]] = []

    operations = [
        migrations.CreateModel(
            name="Instance",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("name", models.CharField(max_length=255, verbose_name="Name of instance")),
                ("slug", models.SlugField(editable=False, max_length=255, unique=True)),
                ("n", models.PositiveIntegerField()),
                ("m", models.PositiveIntegerField()),
                ("text", models.TextField()),
                ("created", models.DateTimeField(auto_now_add=True)),
            ],
        ),
        migrations.CreateModel(
            name="SelectionRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "objective",
                    models.CharField(
                        choices=[
                            ("cost", "Minimum cost input selection"),
                            ("cardinality", "Minimum number of inputs"),
                            ("observability", "Minimum cost output selection"),
                        ],
                        max_length=32,
                    ),
                ),
                ("inputs", models.JSONField(default=list)),
                ("total_cost", models.CharField(max_length=64)),
                ("lp_objective", models.CharField(max_length=64)),
                ("delta", models.PositiveIntegerField()),
                (
                    "bound",
                    models.CharField(
                        choices=[
                            ("delta", "Within Δ of the optimum"),
                            ("delta_minus_one", "Within Δ-1 of the optimum (B(Ā) has a perfect matching)"),
                            ("exact", "Optimal (D(Ā) is irreducible)"),
                        ],
                        max_length=32,
                    ),
                ),
                ("created", models.DateTimeField(auto_now_add=True)),
                (
                    "instance",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="runs",
                        to="structural.instance",
                    ),
                ),
            ],
            options={
                "ordering": ["-created", "-id"],
            },
        ),
    ]
